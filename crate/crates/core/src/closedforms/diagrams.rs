//! Raw integral specs for the closed-form families, for evaluation by the
//! class-counting engine.

use super::doublefan::{DoubleFanClosed, OpenedMonomial};
use crate::integrals::{Factor, IntegralSpec};

fn col(k: usize) -> String {
    format!("c{k}")
}

/// `|U_{ac}|^{2m}`.
pub fn fan_spec(m: u32) -> IntegralSpec {
    partial_fan_spec(&[m])
}

/// `∏_j |U_{a c_j}|^{2 m_j}`.
pub fn partial_fan_spec(parts: &[u32]) -> IntegralSpec {
    IntegralSpec::direct(
        parts
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| Factor::new("a", col(k + 1), m))
            .collect(),
    )
}

/// `|U_{bd}|^{2 m1} |U_{bc}|^{2 m2} |U_{ac}|^{2 m3}`.
pub fn z_spec(m1: u32, m2: u32, m3: u32) -> IntegralSpec {
    IntegralSpec::direct(
        [("b", "d", m1), ("b", "c", m2), ("a", "c", m3)]
            .into_iter()
            .filter(|&(_, _, m)| m > 0)
            .map(|(r, c, m)| Factor::new(r, c, m))
            .collect(),
    )
}

/// `∏_i |U_{r_i c_i}|^{2 p_i}` with all rows and columns distinct.
pub fn stack_spec(parts: &[u32]) -> IntegralSpec {
    IntegralSpec::direct(
        parts
            .iter()
            .enumerate()
            .map(|(k, &m)| Factor::new(format!("r{}", k + 1), col(k + 1), m))
            .collect(),
    )
}

/// Two L-dots `a`, `b`, every pattern on its own R-dot.
pub fn opened_spec(mono: &OpenedMonomial) -> IntegralSpec {
    let mut conj = Vec::new();
    let mut plain = Vec::new();
    let mut k = 0;
    let mut push = |count: u32, star: &str, row: &str| {
        for _ in 0..count {
            k += 1;
            conj.push(Factor::new(star, col(k), 1));
            plain.push(Factor::new(row, col(k), 1));
        }
    };
    push(mono.alpha_a, "a", "b");
    push(mono.alpha_b, "b", "a");
    push(mono.beta_a, "a", "a");
    push(mono.beta_b, "b", "b");
    IntegralSpec::new(conj, plain)
}

/// `[A_a]^α [A_b]^α`.
pub fn special_double_fan_spec(alpha: u32) -> IntegralSpec {
    opened_spec(&OpenedMonomial::new(alpha, alpha, 0, 0))
}

/// A partially opened double-fan: branch `k` lands on R-dot `c_k`.
pub fn double_fan_spec(branches: &[DoubleFanClosed]) -> IntegralSpec {
    let mut conj = Vec::new();
    let mut plain = Vec::new();
    for (k, b) in branches.iter().enumerate() {
        let c = col(k + 1);
        for (side, row, m) in [
            (0, "a", b.m_a),
            (0, "b", b.m_b),
            (1, "a", b.n_a),
            (1, "b", b.n_b),
        ] {
            if m == 0 {
                continue;
            }
            let f = Factor::new(row, &c, m);
            if side == 0 {
                conj.push(f);
            } else {
                plain.push(f);
            }
        }
    }
    IntegralSpec::new(conj, plain)
}

/// The four-line direct integral `|U_{be}|² |U_{bd}|² |U_{ad}|² |U_{ac}|²`.
pub fn sigma_spec() -> IntegralSpec {
    IntegralSpec::direct(
        [("b", "e"), ("b", "d"), ("a", "d"), ("a", "c")]
            .into_iter()
            .map(|(r, c)| Factor::new(r, c, 1))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedforms::{fan_integral, z_integral};
    use crate::integrals::{evaluate, Limits};

    #[test]
    fn specs_evaluate_to_closed_forms() {
        let limits = Limits::default();
        assert_eq!(evaluate(&fan_spec(3), &limits).unwrap(), fan_integral(3));
        assert_eq!(
            evaluate(&z_spec(1, 1, 1), &limits).unwrap(),
            z_integral(1, 1, 1)
        );
        assert_eq!(
            evaluate(&z_spec(0, 0, 0), &limits).unwrap(),
            fan_integral(0)
        );
    }

    #[test]
    fn opened_spec_shape() {
        let s = opened_spec(&OpenedMonomial::new(1, 1, 1, 0));
        assert_eq!(
            s.to_string(),
            "conj: a,c1; b,c2; a,c3; plain: b,c1; a,c2; a,c3"
        );
        let d = double_fan_spec(&[DoubleFanClosed::new(1, 2, 2, 1).unwrap()]);
        assert_eq!(d.to_string(), "conj: a,c1; b,c1,2; plain: a,c1,2; b,c1");
    }
}
