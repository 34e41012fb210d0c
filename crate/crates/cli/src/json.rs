//! Canonical JSON encodings. Rationals are strings "p/q" with q > 0 in lowest
//! terms; maps are key-sorted (serde_json's default `Map`).

use bialg::envelope::PBWElement;
use bialg::{FormalSeriesTensor, LieAlgebra, LinearForm, RMatrix, Rational};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn tensor(t: &FormalSeriesTensor<Rational>) -> Value {
    let dim = t.dim();
    let terms: Vec<Value> = t
        .terms()
        .map(|(k, c)| {
            let slots: Vec<&[u8]> = k.chunks(dim).collect();
            json!({ "exponents": slots, "coeff": rational(c) })
        })
        .collect();
    json!({ "slots": t.slots(), "truncation": t.trunc(), "terms": terms })
}

pub fn pbw(x: &PBWElement<Rational>, names: &[String]) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| {
            let word: Vec<&str> = w.iter().map(|&i| names[i].as_str()).collect();
            json!({ "word": word, "coeff": rational(c) })
        })
        .collect();
    Value::Array(terms)
}

pub fn form(f: &LinearForm<Rational>) -> Value {
    let terms: Vec<Value> = f.terms().map(|(k, c)| json!({ "exponents": k, "coeff": rational(c) })).collect();
    json!({ "order": f.order(), "terms": terms })
}

pub fn matrix(r: &RMatrix<Rational>) -> Value {
    let entries: Vec<Value> = r.nonzero().map(|(i, j, c)| json!([i, j, rational(c)])).collect();
    Value::Array(entries)
}

/// Nonzero structure constants as [i, j, k, c_ij^k] with i < j.
pub fn brackets(g: &LieAlgebra<Rational>) -> Value {
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            for (k, c) in g.bracket_terms(i, j) {
                out.push(json!([i, j, k, rational(c)]));
            }
        }
    }
    Value::Array(out)
}
