//! Text, LaTeX and JSON emitters for polynomials and series.
//!
//! Text form joins monomials `c * q^i * t^j * a^k` with `+`/`-`; terms are
//! ordered lexicographically by (a, q, t) exponents.  The LaTeX emitter
//! follows the usual display style, e.g. `\frac{q^{5}t}{(1-q)^{2}}`.

use super::{Exponents, LaurentPoly, PoleSum, RationalSeries};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};
use std::fmt;

fn push_factor(out: &mut String, var: &str, e: i64, latex: bool) {
    if e == 0 {
        return;
    }
    if !out.is_empty() && !latex {
        out.push('*');
    }
    out.push_str(var);
    if e != 1 {
        if latex {
            out.push_str(&format!("^{{{e}}}"));
        } else {
            out.push_str(&format!("^{e}"));
        }
    }
}

fn monomial_string(c: &BigInt, e: &Exponents, latex: bool) -> String {
    let mut body = String::new();
    push_factor(&mut body, "q", e.q, latex);
    push_factor(&mut body, "t", e.t, latex);
    push_factor(&mut body, "a", e.a, latex);
    let mag = c.abs();
    if body.is_empty() {
        return mag.to_string();
    }
    if mag.is_one() {
        body
    } else if latex {
        format!("{mag}{body}")
    } else {
        format!("{mag}*{body}")
    }
}

fn poly_string(p: &LaurentPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.iter().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&monomial_string(c, e, latex));
    }
    out
}

fn den_string(den: &[u32], latex: bool) -> String {
    // den is sorted; group equal factors into powers.
    let mut out = String::new();
    let mut i = 0;
    while i < den.len() {
        let l = den[i];
        let mut m = 0;
        while i < den.len() && den[i] == l {
            m += 1;
            i += 1;
        }
        if !out.is_empty() && !latex {
            out.push('*');
        }
        if latex {
            let base = if l == 1 {
                "1-q".to_string()
            } else {
                format!("1-q^{{{l}}}")
            };
            if m == 1 && den.len() == 1 {
                out.push_str(&base);
            } else if m == 1 {
                out.push_str(&format!("({base})"));
            } else {
                out.push_str(&format!("({base})^{{{m}}}"));
            }
        } else {
            let base = if l == 1 {
                "1-q".to_string()
            } else {
                format!("1-q^{l}")
            };
            if m == 1 {
                out.push_str(&format!("({base})"));
            } else {
                out.push_str(&format!("({base})^{m}"));
            }
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_string(self, false))
    }
}

impl LaurentPoly {
    pub fn to_latex(&self) -> String {
        poly_string(self, true)
    }

    /// JSON array of `{c, q, t, a}` term objects; coefficients are emitted
    /// as strings so arbitrary precision survives the round trip.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(e, c)| json!({"c": c.to_string(), "q": e.q, "t": e.t, "a": e.a}))
                .collect(),
        )
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_empty() {
            return f.write_str(&poly_string(self.numerator(), false));
        }
        let num = self.numerator();
        let num_str = if num.num_terms() == 1 {
            poly_string(num, false)
        } else {
            format!("({})", poly_string(num, false))
        };
        write!(f, "{}/{}", num_str, den_string(self.denominator(), false))
    }
}

impl RationalSeries {
    pub fn to_latex(&self) -> String {
        if self.denominator().is_empty() {
            return self.numerator().to_latex();
        }
        format!(
            "\\frac{{{}}}{{{}}}",
            self.numerator().to_latex(),
            den_string(self.denominator(), true)
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num": self.numerator().to_json(),
            "den": self.denominator(),
        })
    }
}

impl fmt::Display for PoleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts() {
            None => f.write_str("<no pole-graded form>"),
            Some(parts) if parts.is_empty() => f.write_str("0"),
            Some(parts) => {
                let rendered: Vec<String> = parts
                    .iter()
                    .map(|(&j, p)| {
                        if j == 0 {
                            poly_string(p, false)
                        } else {
                            let num = if p.num_terms() == 1 {
                                poly_string(p, false)
                            } else {
                                format!("({})", poly_string(p, false))
                            };
                            format!("{}/{}", num, den_string(&vec![1; j as usize], false))
                        }
                    })
                    .collect();
                f.write_str(&rendered.join(" + "))
            }
        }
    }
}

impl PoleSum {
    pub fn to_latex(&self) -> String {
        match self.parts() {
            None => "<no pole-graded form>".to_string(),
            Some(parts) if parts.is_empty() => "0".to_string(),
            Some(parts) => parts
                .iter()
                .map(|(&j, p)| {
                    if j == 0 {
                        p.to_latex()
                    } else {
                        format!(
                            "\\frac{{{}}}{{{}}}",
                            p.to_latex(),
                            den_string(&vec![1; j as usize], true)
                        )
                    }
                })
                .collect::<Vec<_>>()
                .join("+"),
        }
    }
}
