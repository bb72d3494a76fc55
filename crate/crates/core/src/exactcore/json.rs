//! Canonical JSON exchange format for exact polynomials and scalars.

use super::field::{q_string, Field, GQ, Q};
use super::poly::Poly;
use super::tensor::PolyTensor;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub num: String,
    pub den: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub im_num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub im_den: Option<String>,
}

pub fn parse_q(num: &str, den: &str) -> Result<Q, String> {
    let n: BigInt = num.trim().parse().map_err(|_| format!("bad integer {:?}", num))?;
    let d: BigInt = den.trim().parse().map_err(|_| format!("bad integer {:?}", den))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(Q::new(n, d))
}

/// Parse "a" or "a/b".
pub fn parse_q_str(s: &str) -> Result<Q, String> {
    match s.split_once('/') {
        Some((a, b)) => parse_q(a, b),
        None => parse_q(s, "1"),
    }
}

pub fn poly_to_json<C: Field>(p: &Poly<C>) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| {
            let re = c.real_part();
            let im = c.imag_part();
            TermJson {
                exponents: e.iter().map(|&a| a as u32).collect(),
                num: re.numer().to_string(),
                den: re.denom().to_string(),
                im_num: (!im.is_zero()).then(|| im.numer().to_string()),
                im_den: (!im.is_zero()).then(|| im.denom().to_string()),
            }
        })
        .collect()
}

pub fn poly_from_json(nvars: usize, terms: &[TermJson]) -> Result<Poly<GQ>, String> {
    let mut p = Poly::zero(nvars);
    for (k, t) in terms.iter().enumerate() {
        if t.exponents.len() != nvars {
            return Err(format!("term {}: expected {} exponents, got {}", k, nvars, t.exponents.len()));
        }
        let re = parse_q(&t.num, &t.den).map_err(|e| format!("term {}: {}", k, e))?;
        let im = match (&t.im_num, &t.im_den) {
            (Some(a), Some(b)) => parse_q(a, b).map_err(|e| format!("term {}: {}", k, e))?,
            (Some(a), None) => parse_q(a, "1").map_err(|e| format!("term {}: {}", k, e))?,
            _ => Q::zero(),
        };
        let e: Vec<u8> = t.exponents.iter().map(|&a| a as u8).collect();
        p.add_term(e, GQ::new(re, im));
    }
    Ok(p)
}

pub fn q_json(x: &Q) -> Value {
    Value::String(q_string(x))
}

pub fn scalar_json<C: Field>(x: &C) -> Value {
    let im = x.imag_part();
    if im.is_zero() {
        q_json(&x.real_part())
    } else {
        json!({"re": q_string(&x.real_part()), "im": q_string(&im)})
    }
}

/// Gaussian rational as {"re", "im"} regardless of the imaginary part.
pub fn gq_json(x: &GQ) -> Value {
    json!({"re": q_string(&x.real_part()), "im": q_string(&x.imag_part())})
}

/// Nonzero components of a polynomial tensor as [{"index": [...], "terms": [...]}].
pub fn tensor_to_json<C: Field>(t: &PolyTensor<C>) -> Value {
    let comps: Vec<Value> = t
        .indices()
        .filter(|i| !t.get(i).is_zero())
        .map(|i| json!({"index": i, "terms": poly_to_json(t.get(&i))}))
        .collect();
    json!({"dim": t.dim, "rank": t.rank, "components": comps})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::{q, qr};

    #[test]
    fn roundtrip() {
        let p = Poly::monomial(vec![1, 0, 2], GQ::new(qr(3, 4), q(-2)))
            .add(&Poly::monomial(vec![0, 0, 0], GQ::real(q(5))));
        let j = poly_to_json(&p);
        let s = serde_json::to_string(&j).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&s).unwrap();
        assert_eq!(poly_from_json(3, &back).unwrap(), p);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_q_str("-6/4").unwrap(), qr(-3, 2));
        assert!(parse_q_str("1/0").is_err());
        assert_eq!(scalar_json(&GQ::new(q(0), qr(-3, 2))), json!({"re": "0", "im": "-3/2"}));
        assert_eq!(gq_json(&GQ::real(qr(4, 6))), json!({"re": "2/3", "im": "0"}));
    }

    #[test]
    fn tensor_components() {
        let mut t = PolyTensor::<Q>::zero(2, 2, 2);
        t.set(&[0, 1], Poly::var(2, 1));
        let v = tensor_to_json(&t);
        assert_eq!(v["components"].as_array().unwrap().len(), 1);
        assert_eq!(v["components"][0]["index"], json!([0, 1]));
    }
}
