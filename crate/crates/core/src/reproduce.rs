//! Regenerates the worked spread-set displays and the predicted-parameter
//! table at fixed small fields, for byte-comparison against checked-in
//! golden files.  Each builder recomputes the matrices through the module
//! machinery *and* through the closed-form entry patterns, asserting they
//! agree before emitting anything.

use serde_json::{json, Value};

use crate::codes::{predicted_exponent_tuple, Code};
use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx};
use crate::poly::Poly;
use crate::quotient::QuotientCtx;
use crate::semifield::SemifieldCtx;
use crate::skewpoly::SkewRing;

/// Dispatch by example name; unknown names are parameter errors.
pub fn by_name(name: &str) -> Result<Value> {
    match name {
        "ns2" => ns2(),
        "ns3" => ns3(),
        "table52" => Ok(table52()),
        other => Err(Error::InvalidParameter(format!(
            "unknown example '{other}' (expected ns2, ns3, or table52)"
        ))),
    }
}

/// Compact one-line JSON with a trailing newline; object keys are emitted
/// in sorted order, so output is byte-stable.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("value serializes");
    s.push('\n');
    s
}

/// The 2x2 spread set over F_9: elements `a_0 + a_1 x + eta a_0^rho x^2`
/// in the quotient by `F(x^2)`, `F = y^2 + 1`, displayed in the basis
/// `{1, x}` with every residue evaluated at `beta = -f_0`.
pub fn ns2() -> Result<Value> {
    let field = FieldCtx::new(3, 2)?;
    let ring = SkewRing::new(field, Automorphism::new(1));
    let central = Poly::from_coeffs(vec![1, 0, 1]);
    let mut quo = QuotientCtx::new(ring, central)?;
    quo.find_divisor(1 << 16)?;
    let beta = quo.field().neg(quo.divisor().expect("just found").coeff(0));
    let rho = Automorphism::new(1);
    // first nonzero eta passing the norm condition
    let eta = quo
        .field()
        .elements()
        .find(|&v| {
            v != 0
                && Code::new(&quo, 1, v, rho, None)
                    .map(|c| c.condition())
                    .unwrap_or(false)
        })
        .expect("some eta satisfies the condition at q = 3");
    let code = Code::new(&quo, 1, eta, rho, None)?;
    let condition = code.condition();
    let ctx = SemifieldCtx::new(code)?;
    let mats = ctx.spread_matrices()?;

    let field = quo.field();
    let mut rows = Vec::with_capacity(mats.len());
    for (idx, mat) in mats.iter().enumerate() {
        let el = ctx.code().element_by_index(idx as u128);
        let (a0, a1) = (el.coeff(0), el.coeff(1));
        let top = field.mul(eta, field.apply(rho, a0));
        let expected = vec![
            field.add(a0, field.mul(top, beta)),
            field.mul(a1, beta),
            field.frobenius_exp(a1, 1),
            field.add(
                field.frobenius_exp(a0, 1),
                field.mul(field.frobenius_exp(top, 1), beta),
            ),
        ];
        let computed = mat.eval_entries(field, beta);
        assert_eq!(computed, expected, "display mismatch at tuple index {idx}");
        let mut row = vec![a0, a1];
        row.extend(computed);
        rows.push(row);
    }

    Ok(json!({
        "example": "ns2",
        "p": field.p(),
        "field_modulus": field.modulus(),
        "sigma_exp": 1,
        "rho_exp": 1,
        "central_modulus": [1, 0, 1],
        "divisor": quo.divisor().expect("just found").coeffs(),
        "beta": beta,
        "eta": eta,
        "condition": condition,
        "basis": "1,x",
        "matrices": rows,
    }))
}

/// The 3x3 spread set over F_8: elements
/// `g_0 + g_1 x + g_2 x^2 + eta g_0^rho x^3` in the quotient by
/// `F(x^3)`, `F = y^3 + y + 1`, displayed in `{1, x, x^2}` at
/// `gamma = -f_0`.  No nonzero eta satisfies the norm condition over F_2,
/// so this display is recorded with its condition flag set to false.
pub fn ns3() -> Result<Value> {
    let field = FieldCtx::new(2, 3)?;
    let ring = SkewRing::new(field, Automorphism::new(1));
    let central = Poly::from_coeffs(vec![1, 1, 0, 1]);
    let mut quo = QuotientCtx::new(ring, central)?;
    quo.find_divisor(1 << 16)?;
    let gamma = quo.field().neg(quo.divisor().expect("just found").coeff(0));
    let rho = Automorphism::new(1);
    let eta = 2; // the field generator; a display choice, not a division algebra
    let code = Code::new(&quo, 1, eta, rho, None)?;
    let condition = code.condition();
    let ctx = SemifieldCtx::new(code)?;
    let mats = ctx.spread_matrices()?;

    let field = quo.field();
    let sq = |v: u64, i: usize| field.frobenius_exp(v, i);
    let mut rows = Vec::with_capacity(mats.len());
    for (idx, mat) in mats.iter().enumerate() {
        let el = ctx.code().element_by_index(idx as u128);
        let (g0, g1, g2) = (el.coeff(0), el.coeff(1), el.coeff(2));
        let g3 = field.mul(eta, field.apply(rho, g0));
        let expected = vec![
            field.add(g0, field.mul(g3, gamma)),
            field.mul(g2, gamma),
            field.mul(g1, gamma),
            sq(g1, 2),
            field.add(sq(g0, 2), field.mul(sq(g3, 2), gamma)),
            field.mul(sq(g2, 2), gamma),
            sq(g2, 1),
            sq(g1, 1),
            field.add(sq(g0, 1), field.mul(sq(g3, 1), gamma)),
        ];
        let computed = mat.eval_entries(field, gamma);
        assert_eq!(computed, expected, "display mismatch at tuple index {idx}");
        let mut row = vec![g0, g1, g2];
        row.extend(computed);
        rows.push(row);
    }

    Ok(json!({
        "example": "ns3",
        "p": field.p(),
        "field_modulus": field.modulus(),
        "sigma_exp": 1,
        "rho_exp": 1,
        "central_modulus": [1, 1, 0, 1],
        "divisor": quo.divisor().expect("just found").coeffs(),
        "gamma": gamma,
        "eta": eta,
        "condition": condition,
        "basis": "1,x,x^2",
        "matrices": rows,
    }))
}

fn q_power(exp: usize) -> String {
    if exp == 1 {
        "q".into()
    } else {
        format!("q^{exp}")
    }
}

/// The four predicted-parameter rows `(n, s, e, i)` with `j = 1`, `k = 1`.
pub fn table52() -> Value {
    let rows: Vec<Value> = [(3usize, 3usize, 1usize, 3usize), (6, 2, 1, 4), (8, 2, 1, 4), (6, 3, 1, 0)]
        .iter()
        .map(|&(n, s, e, i)| {
            let exps = predicted_exponent_tuple(n, s, 1, e, i, 1);
            let params: Vec<String> = exps.iter().map(|&x| q_power(x)).collect();
            json!({
                "n": n,
                "s": s,
                "e": e,
                "i": i,
                "parameters": params,
            })
        })
        .collect();
    json!({
        "example": "table52",
        "j": 1,
        "k": 1,
        "rows": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ns2_shape_and_choices() {
        let v = ns2().unwrap();
        assert_eq!(v["eta"], 4);
        assert_eq!(v["beta"], 6);
        assert_eq!(v["condition"], true);
        assert_eq!(v["divisor"], json!([3, 0, 1]));
        let rows = v["matrices"].as_array().unwrap();
        assert_eq!(rows.len(), 81);
        // the zero tuple maps to the zero matrix
        assert_eq!(rows[0], json!([0, 0, 0, 0, 0, 0]));
        // a_0 = 1, a_1 = 0: top-left is 1 + eta*beta
        let field = FieldCtx::new(3, 2).unwrap();
        let tl = field.add(1, field.mul(4, 6));
        assert_eq!(rows[1][2], json!(tl));
    }

    #[test]
    fn ns3_shape_and_choices() {
        let v = ns3().unwrap();
        assert_eq!(v["eta"], 2);
        assert_eq!(v["gamma"], 2);
        assert_eq!(v["condition"], false);
        assert_eq!(v["divisor"], json!([2, 0, 0, 1]));
        let rows = v["matrices"].as_array().unwrap();
        assert_eq!(rows.len(), 512);
        // g = x: the companion-like permutation with gamma placed at (1,3)
        let x_row = rows.iter().find(|r| r[0] == json!(0) && r[1] == json!(1) && r[2] == json!(0)).unwrap();
        assert_eq!(
            x_row,
            &json!([0, 1, 0, 0, 0, 2, 1, 0, 0, 0, 1, 0])
        );
    }

    #[test]
    fn table52_rows_are_the_published_tuples() {
        let v = table52();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        let expect = [
            json!(["q^9", "q^3", "q^3", "q^3", "q"]),
            json!(["q^12", "q^2", "q^2", "q^2", "q"]),
            json!(["q^16", "q^4", "q^2", "q^2", "q"]),
            json!(["q^18", "q^6", "q^3", "q^3", "q"]),
        ];
        for (row, want) in rows.iter().zip(expect.iter()) {
            assert_eq!(&row["parameters"], want);
        }
    }

    #[test]
    fn rendering_is_stable_and_newline_terminated() {
        let a = render(&table52());
        let b = render(&table52());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        assert_eq!(a.lines().count(), 1);
        // keys come out sorted
        let e = a.find("\"example\"").unwrap();
        let j = a.find("\"j\"").unwrap();
        let k = a.find("\"k\"").unwrap();
        assert!(e < j && j < k);
    }

    #[test]
    fn unknown_example_is_rejected() {
        assert!(by_name("ns4").is_err());
    }
}
