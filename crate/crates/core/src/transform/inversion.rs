use crate::error::Result;
use crate::field::ParamMonomial as M;
use crate::series::{PhiSpec, PochLength, SeriesSpec, WSpec};

use super::{Expression, Prefactor};

fn product(xs: &[M]) -> M {
    xs.iter().fold(M::ONE, |acc, &m| acc * m)
}

/// Reverses the order of summation of a terminating `phi`.
///
/// With `R` uppers (including `q^-n`), `S` lowers and padding `m`, the term
/// exponent is `e = 1 + S - R + m`. The result has uppers `q^-n, q^(1-n)/b_j`,
/// lowers `q^(1-n)/a_i`, padding `e`, argument
/// `q^(n+1) prod(b) / (prod(a) z) * q^(m(1-n))` and prefactor
/// `(a;q)_n/(b;q)_n (z/q)^n ((-1)^n q^C(n,2))^(e-1)`.
pub fn invert_phi(spec: &PhiSpec) -> Result<Expression> {
    let slot = spec.terminating_slot()?;
    let a: Vec<M> = spec
        .upper
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != slot)
        .map(|(_, &m)| m)
        .collect();
    let b = &spec.lower;
    let m = spec.zero_pad;
    let e = spec.term_exponent();
    let z = spec.argument;
    let flip = |x: &M| M::q_pow(1, -1) / *x;

    let mut upper = vec![M::Q_NEG_N];
    upper.extend(b.iter().map(flip));
    let lower = a.iter().map(flip).collect();
    let argument = (product(b) / product(&a) / z).shift(1 + m, 1 - m);
    let series = PhiSpec {
        upper,
        lower,
        argument,
        zero_pad: e,
    };

    let mut pre = Prefactor {
        qbinom_exp: e - 1,
        sign_exp: e - 1,
        power_base: z.shift(-1, 0),
        poch: Vec::new(),
    };
    for &x in &a {
        pre = pre.num(x, PochLength::N);
    }
    for &x in b {
        pre = pre.den(x, PochLength::N);
    }
    Ok(Expression::new(pre, series))
}

/// Reverses the order of summation of a terminating `8W7(b; q^-n, a_j; q, z)`,
/// giving `8W7(q^-2n/b; q^-n, q^-n a_j/b; q, q^(2n+4) b^4 / (z prod(a)^2))`.
pub fn invert_w(spec: &WSpec) -> Result<Expression> {
    let slot = spec.terminating_slot()?;
    let b = spec.special;
    let others: Vec<M> = (0..5).filter(|&j| j != slot).map(|j| spec.numer[j]).collect();
    let numer = std::array::from_fn(|j| if j == slot { M::Q_NEG_N } else { (spec.numer[j] / b).shift(0, -1) });
    let argument = b.powi(4).shift(4, 2) / spec.argument / product(&others).powi(2);
    let series = WSpec::new(b.inv().shift(0, -2), numer, argument);

    // (+-q sqrt(b);q)_n / (+-sqrt(b);q)_n = (1 - b q^2n) / (1 - b)
    let mut pre = Prefactor {
        qbinom_exp: -1,
        sign_exp: 1,
        power_base: spec.argument.shift(-1, 0),
        poch: Vec::new(),
    }
    .num(b.shift(0, 2), PochLength::fixed(1))
    .den(b, PochLength::fixed(1))
    .num(b, PochLength::N)
    .den(b.shift(1, 1), PochLength::N);
    for &x in &others {
        pre = pre.num(x, PochLength::N).den(b.shift(1, 0) / x, PochLength::N);
    }
    Ok(Expression::new(pre, series))
}

pub fn invert(series: &SeriesSpec) -> Result<Expression> {
    match series {
        SeriesSpec::Phi(p) => invert_phi(p),
        SeriesSpec::W(w) => invert_w(w),
    }
}
