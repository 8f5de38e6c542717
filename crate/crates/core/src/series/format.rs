//! Line-oriented `.series` definition files.
//!
//! ```text
//! # comment
//! [series]
//! name=pi-bbp
//! prefactor=1/1
//! base=16/1
//! start=0
//! r_fraction=4/(8m+1)^1
//! r_fraction=-2/(8m+4)^1
//! num_factorial=2,0
//! den_factorial=1,0
//! q_is_one=false
//! ```
//!
//! `R` is given either by repeated `r_fraction` lines (summed over a common
//! denominator) or by `r_num`/`r_den` coefficient lists, lowest degree first.

use crate::exact::rational::{parse_rational, to_fraction_string};
use crate::exact::{Polynomial, Rational, RationalFunction};

use super::term::{BBPTerm, FactorialFactor};
use super::SeriesError;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SeriesError {
    SeriesError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Cursor<'a> {
    line: usize,
    column: usize,
    value: &'a str,
}

impl Cursor<'_> {
    fn err(&self, message: impl Into<String>) -> SeriesError {
        syntax(self.line, self.column, message)
    }

    fn rational(&self) -> Result<Rational, SeriesError> {
        parse_rational(self.value).map_err(|_| self.err(format!("expected a rational, found {:?}", self.value)))
    }

    fn list(&self) -> Result<Vec<Rational>, SeriesError> {
        self.value
            .split(',')
            .map(|s| parse_rational(s).map_err(|_| self.err(format!("bad coefficient {:?}", s.trim()))))
            .collect()
    }

    fn factorial(&self) -> Result<FactorialFactor, SeriesError> {
        let (a, c) = self
            .value
            .split_once(',')
            .ok_or_else(|| self.err("expected <coeff>,<offset>"))?;
        let a: u32 = a.trim().parse().map_err(|_| self.err("bad factorial coefficient"))?;
        let c: i64 = c.trim().parse().map_err(|_| self.err("bad factorial offset"))?;
        Ok(FactorialFactor::new(a, c))
    }

    /// `<coef>/(<a>m+<c>)^<p>`; `a` defaults to 1, `c` to 0 and `p` to 1.
    fn fraction(&self) -> Result<(Rational, Rational, Rational, u32), SeriesError> {
        let v: String = self.value.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, rest) = v
            .split_once("/(")
            .ok_or_else(|| self.err("expected <coef>/(<a>m+<c>)^<p>"))?;
        let coef = parse_rational(coef).map_err(|_| self.err("bad fraction coefficient"))?;
        let (inner, power) = rest
            .split_once(')')
            .ok_or_else(|| self.err("missing ')'"))?;
        let p = match power {
            "" => 1,
            s => s
                .strip_prefix('^')
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| self.err("bad exponent"))?,
        };
        let (a, c) = inner
            .split_once('m')
            .ok_or_else(|| self.err("linear factor must contain 'm'"))?;
        let a = match a {
            "" | "+" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            s => parse_rational(s).map_err(|_| self.err("bad linear coefficient"))?,
        };
        let c = match c {
            "" => Rational::from_integer(0.into()),
            s => parse_rational(s.strip_prefix('+').unwrap_or(s))
                .map_err(|_| self.err("bad linear offset"))?,
        };
        Ok((coef, a, c, p))
    }
}

fn once<T>(slot: &Option<T>, line: usize, indent: usize, key: &str) -> Result<(), SeriesError> {
    match slot {
        Some(_) => Err(syntax(line, indent + 1, format!("duplicate key {key:?}"))),
        None => Ok(()),
    }
}

pub fn parse_series(text: &str) -> Result<BBPTerm, SeriesError> {
    let mut seen_header = false;
    let mut name = None;
    let mut prefactor = None;
    let mut base = None;
    let mut start = None;
    let mut q_is_one = None;
    let mut fractions = Vec::new();
    let mut r_num = None;
    let mut r_den = None;
    let mut num_factorials = Vec::new();
    let mut den_factorials = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let indent = raw.len() - raw.trim_start().len();
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !seen_header {
            if trimmed == "[series]" {
                seen_header = true;
                continue;
            }
            return Err(syntax(line, indent + 1, "expected [series] header"));
        }
        if trimmed.starts_with('[') {
            return Err(syntax(line, indent + 1, "only one [series] section is allowed"));
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| syntax(line, indent + 1, "expected key=value"))?;
        let key = key.trim();
        let cur = Cursor {
            line,
            column: indent + trimmed.find('=').unwrap() + 2,
            value: value.trim(),
        };
        match key {
            "name" => {
                once(&name, line, indent, key)?;
                if cur.value.is_empty() || !cur.value.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                    return Err(cur.err("name must be a non-empty identifier"));
                }
                name = Some(cur.value.to_string());
            }
            "prefactor" => {
                once(&prefactor, line, indent, key)?;
                prefactor = Some(cur.rational()?);
            }
            "base" => {
                once(&base, line, indent, key)?;
                base = Some(cur.rational()?);
            }
            "start" => {
                once(&start, line, indent, key)?;
                start = Some(cur.value.parse::<u64>().map_err(|_| cur.err("start must be a nonnegative integer"))?);
            }
            "q_is_one" => {
                once(&q_is_one, line, indent, key)?;
                q_is_one = Some(match cur.value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(cur.err("expected true or false")),
                });
            }
            "r_fraction" => fractions.push(cur.fraction()?),
            "r_num" => {
                once(&r_num, line, indent, key)?;
                r_num = Some(cur.list()?);
            }
            "r_den" => {
                once(&r_den, line, indent, key)?;
                r_den = Some(cur.list()?);
            }
            "num_factorial" => num_factorials.push(cur.factorial()?),
            "den_factorial" => den_factorials.push(cur.factorial()?),
            other => return Err(syntax(line, indent + 1, format!("unknown key {other:?}"))),
        }
    }

    let end = |msg: &str| syntax(last_line.max(1), 1, msg.to_string());
    if !seen_header {
        return Err(end("missing [series] header"));
    }
    let name = name.ok_or_else(|| end("missing name"))?;
    let q_is_one = q_is_one.unwrap_or(false);
    let base_q = match base {
        Some(b) => b,
        None if q_is_one => Rational::from_integer(1.into()),
        None => return Err(end("missing base")),
    };
    let r = match (fractions.is_empty(), r_num, r_den) {
        (false, None, None) => RationalFunction::sum_of_simple_fractions(&fractions)
            .map_err(|_| end("fraction with zero linear factor"))?,
        (true, Some(n), d) => {
            let d = d.unwrap_or_else(|| vec![Rational::from_integer(1.into())]);
            RationalFunction::new(Polynomial::new(n), Polynomial::new(d))
                .map_err(|_| end("r_den must be nonzero"))?
        }
        (true, None, Some(_)) => return Err(end("r_den without r_num")),
        (true, None, None) => return Err(end("missing rational part (r_fraction or r_num)")),
        (false, ..) => return Err(end("r_fraction cannot be combined with r_num/r_den")),
    };

    BBPTerm {
        name,
        prefactor: prefactor.unwrap_or_else(|| Rational::from_integer(1.into())),
        r,
        base_q,
        q_is_one,
        num_factorials,
        den_factorials,
        start_index: start.unwrap_or(0),
    }
    .validated()
}

fn join(coeffs: &[Rational]) -> String {
    coeffs.iter().map(to_fraction_string).collect::<Vec<_>>().join(",")
}

/// Canonical text form. `R` is written as reduced coefficient lists.
pub fn render(term: &BBPTerm) -> String {
    let mut out = String::from("[series]\n");
    out += &format!("name={}\n", term.name);
    out += &format!("prefactor={}\n", to_fraction_string(&term.prefactor));
    out += &format!("base={}\n", to_fraction_string(&term.base_q));
    out += &format!("start={}\n", term.start_index);
    out += &format!("r_num={}\n", join(term.r.num().coeffs()));
    out += &format!("r_den={}\n", join(term.r.den().coeffs()));
    for f in &term.num_factorials {
        out += &format!("num_factorial={},{}\n", f.coeff, f.offset);
    }
    for f in &term.den_factorials {
        out += &format!("den_factorial={},{}\n", f.coeff, f.offset);
    }
    out += &format!("q_is_one={}\n", term.q_is_one);
    out
}
