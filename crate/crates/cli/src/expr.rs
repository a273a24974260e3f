//! Size-dependent quantities such as `"L^2/4"` or `"0.5*L"`.

use serde::Deserialize;

/// A number, or a product of a coefficient and a power of `L` optionally
/// divided by a number.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Scaled {
    Value(f64),
    Expr(String),
}

impl Scaled {
    pub fn eval(&self, l: usize) -> Result<f64, String> {
        match self {
            Scaled::Value(v) => Ok(*v),
            Scaled::Expr(s) => eval_expr(s, l as f64),
        }
    }

    /// Checks the syntax without a size.
    pub fn check(&self) -> Result<(), String> {
        self.eval(1).map(|_| ())
    }
}

fn factor(tok: &str, l: f64) -> Result<f64, String> {
    if let Some(rest) = tok.strip_prefix('L') {
        if rest.is_empty() {
            return Ok(l);
        }
        let k: i32 = rest
            .strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| format!("bad power `{tok}`"))?;
        return Ok(l.powi(k));
    }
    tok.parse::<f64>().map_err(|_| format!("bad factor `{tok}`"))
}

fn eval_expr(s: &str, l: f64) -> Result<f64, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.to_string(), Some(d.to_string())),
        None => (s.clone(), None),
    };
    if num.is_empty() {
        return Err(format!("empty expression `{s}`"));
    }
    let mut v = 1.0;
    for tok in num.split('*') {
        v *= factor(tok, l)?;
    }
    if let Some(d) = den {
        let d: f64 = d.parse().map_err(|_| format!("bad divisor `{d}`"))?;
        if d == 0.0 {
            return Err("division by zero".into());
        }
        v /= d;
    }
    Ok(v)
}
