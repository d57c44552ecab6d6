use super::bundle::{ch, ch_equivariant, c_top, lambda_minus1, lambda_op, td, to_cyclotomic, FormalBundle};
use super::graded::{GradedElement, Var};
use crate::error::{Error, Result};
use crate::exactnum::{gcd_u64, CyclotomicNumber, Rational};
use crate::lvalues::{lerch_nonpositive, RootOfUnity};

/// `ch(Lambda_{-1}(E)) Td(E^dual) - c_top(E^dual)` to degree `trunc`.
pub fn borel_serre_residual(e: &FormalBundle, trunc: usize) -> GradedElement<Rational> {
    let d = e.dual();
    lambda_minus1(e).ch(trunc).mul(&td(&d, trunc)).sub(&c_top(&d, trunc))
}

/// Left side of the equivariant Gauss–Bonnet simplification minus `c_top(Z)`,
/// with `Omega = N^dual + Z^dual`.
pub fn equivariant_gauss_bonnet_residual(
    normal: &FormalBundle,
    fixed: &FormalBundle,
    k: i64,
    trunc: usize,
) -> Result<GradedElement<CyclotomicNumber>> {
    let n = normal.n;
    if fixed.n != n {
        return Err(Error::OrderMismatch(n, fixed.n));
    }
    if normal.roots.iter().any(|r| r.weight == 0) {
        return Err(Error::NonInvertible("normal bundle has a weight-0 root".into()));
    }
    if fixed.roots.iter().any(|r| r.weight != 0) {
        return Err(Error::DomainError("fixed-locus tangent bundle must have weight 0".into()));
    }
    if n > 1 && gcd_u64(k.unsigned_abs() % n, n) != 1 {
        return Err(Error::NotCoprime(k, n));
    }
    let n_dual = normal.dual();
    let omega = n_dual.direct_sum(&fixed.dual());
    let denom = lambda_minus1(&n_dual).ch_equivariant(k, trunc)?.inv()?;
    let lhs = denom
        .mul(&to_cyclotomic(&td(fixed, trunc), n))
        .mul(&lambda_minus1(&omega).ch_equivariant(k, trunc)?);
    Ok(lhs.sub(&to_cyclotomic(&c_top(fixed, trunc), n)))
}

/// `kappa^{[l + rk E_0]} + c_top(E_0) sum_z zeta_L(z, -l) ch^{[l]}((E^dual)_z)`,
/// where `g` acts on weight `u` by `zeta_n^(u k)`.
pub fn kappa_residual(e: &FormalBundle, l: usize, k: i64) -> Result<GradedElement<CyclotomicNumber>> {
    let n = e.n;
    if n > 1 && gcd_u64(k.unsigned_abs() % n, n) != 1 {
        return Err(Error::NotCoprime(k, n));
    }
    let e0 = e.weight_part(0);
    let deg = l + e0.rank();
    let dual = e.dual();
    let dual_nz = e.nonzero_part().dual();
    let mut num = GradedElement::zero(&n, deg);
    for p in 1..=dual.rank() {
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let term = ch_equivariant(&lambda_op(&dual, p), k, deg)?;
        num = num.add(&term.scale_q(&Rational::from_int(sign * p as i64)));
    }
    let den = lambda_minus1(&dual_nz).ch_equivariant(k, deg)?;
    let kappa = to_cyclotomic(&td(&e0, deg), n).mul(&num).mul(&den.inv()?);
    let mut sum = GradedElement::zero(&n, deg);
    for u in dual.weights() {
        let z = RootOfUnity::new(n, u as i64 * k);
        let zl = lerch_nonpositive(z, l);
        let part = to_cyclotomic(&ch(&dual.weight_part(u), deg).homogeneous(l), n);
        sum = sum.add(&part.scale(&zl));
    }
    let rhs = to_cyclotomic(&c_top(&e0, deg), n).mul(&sum).neg();
    Ok(kappa.homogeneous(deg).sub(&rhs))
}

/// Square matrix over one cyclotomic field.
pub type Matrix = Vec<Vec<CyclotomicNumber>>;

fn leibniz_det(m: &[Vec<CyclotomicNumber>], rows: &[usize], order: u64) -> CyclotomicNumber {
    // expansion over permutations, via Heap's algorithm
    let k = rows.len();
    if k == 0 {
        return CyclotomicNumber::one(order);
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1i64;
    let term = |perm: &[usize], sign: i64| {
        let mut p = CyclotomicNumber::from_int(order, sign);
        for (i, &j) in perm.iter().enumerate() {
            p = &p * &m[rows[i]][rows[j]];
            if p.is_zero() {
                break;
            }
        }
        p
    };
    let mut acc = term(&perm, sign);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            acc = &acc + &term(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

fn gauss_det(mut m: Matrix, order: u64) -> CyclotomicNumber {
    let n = m.len();
    let mut det = CyclotomicNumber::one(order);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CyclotomicNumber::zero(order);
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// `(sum_t (-1)^t Tr Lambda^t g, det(I - g))`; traces via principal minors.
pub fn woods_hole_sides(g: &Matrix) -> (CyclotomicNumber, CyclotomicNumber) {
    let n = g.len();
    assert!(g.iter().all(|r| r.len() == n), "matrix must be square");
    let order = g.first().and_then(|r| r.first()).map_or(1, CyclotomicNumber::order);
    let mut lhs = CyclotomicNumber::zero(order);
    for mask in 0u32..(1 << n) {
        let rows: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = leibniz_det(g, &rows, order);
        lhs = if rows.len() % 2 == 0 { &lhs + &minor } else { &lhs - &minor };
    }
    let id_minus: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = CyclotomicNumber::from_int(order, (i == j) as i64);
                    &d - &g[i][j]
                })
                .collect()
        })
        .collect();
    (lhs, gauss_det(id_minus, order))
}

pub fn woods_hole_check(g: &Matrix) -> bool {
    let (a, b) = woods_hole_sides(g);
    a == b
}

/// Degree of `f_*(Td(T C) ch(O(D)))` on a curve of genus `g` with `deg D = d`.
pub fn grr_curve(genus: i64, d: i64) -> i64 {
    let omega = Var::new(0, 1);
    let delta = Var::new(1, 1);
    let tangent = FormalBundle::new(1, vec![super::bundle::Root::symbol(omega, 0)]).dual();
    let line = FormalBundle::from_symbols(1, &[(delta, 0)]);
    let integrand = td(&tangent, 1).mul(&ch(&line, 1)).homogeneous(1);
    let value = integrand.integrate(|m| {
        let e = if m.exponent(omega) == 1 { 2 * genus - 2 } else { d };
        Rational::from_int(e)
    });
    assert!(value.is_integer(), "curve Euler characteristic must be integral");
    value.numer().try_into().expect("fits in i64")
}
