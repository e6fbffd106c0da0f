//! Certificate text format: a header `n=<int>`, then one line `i j k p/q`
//! per canonical triangle with nonzero weight, sorted by `(i, j, k)`.

use super::chain::WeightFunction;
use super::rational::{format_rational, parse_rational};
use crate::model::{OrientedTriangle, MAX_TEXT_N};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("certificate parse error on line {line}: {message}")]
pub struct CertificateParseError {
    pub line: usize,
    pub message: String,
}

impl WeightFunction {
    pub fn to_certificate(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for ([i, j, k], v) in self.iter() {
            out.push_str(&format!("{i} {j} {k} {}\n", format_rational(v)));
        }
        out
    }

    /// Parses [`WeightFunction::to_certificate`] output. Lines may come in
    /// any order; blank lines and `#` comments are skipped; a triple listed
    /// twice is rejected.
    pub fn parse_certificate(text: &str) -> Result<WeightFunction, CertificateParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(CertificateParseError {
            line: 1,
            message: "missing `n=<int>` header".into(),
        })?;
        let err = |line: usize, message: String| CertificateParseError { line, message };
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| err(line, format!("expected `n=<int>`, found `{header}`")))?;
        if n == 0 || n > MAX_TEXT_N {
            return Err(err(line, format!("n={n} out of range 1..={MAX_TEXT_N}")));
        }
        let mut w = WeightFunction::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [i, j, k, v] = fields[..] else {
                return Err(err(line, format!("expected `i j k p/q`, found `{body}`")));
            };
            let mut triple = [0usize; 3];
            for (slot, s) in triple.iter_mut().zip([i, j, k]) {
                *slot = s
                    .parse()
                    .map_err(|_| err(line, format!("bad vertex `{s}`")))?;
            }
            let [i, j, k] = triple;
            if !(i < j && j < k) {
                return Err(err(line, format!("triple {i} {j} {k} is not strictly increasing")));
            }
            if k >= n + 2 {
                return Err(err(line, format!("vertex {k} out of range for n={n}")));
            }
            if !seen.insert(triple) {
                return Err(err(line, format!("triple {i} {j} {k} listed twice")));
            }
            let value = parse_rational(v).map_err(|m| err(line, m))?;
            w.set(OrientedTriangle::new(i, j, k), value);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::rational::{frac, int};

    #[test]
    fn round_trip() {
        let mut w = WeightFunction::zero(3);
        w.set(OrientedTriangle::new(0, 1, 3), int(1));
        w.set(OrientedTriangle::new(4, 2, 1), frac(1, 4));
        let text = w.to_certificate();
        assert_eq!(text, "n=3\n0 1 3 1/1\n1 2 4 -1/4\n");
        assert_eq!(WeightFunction::parse_certificate(&text).unwrap(), w);
    }

    #[test]
    fn rejects_bad_lines() {
        for (text, line) in [
            ("", 1),
            ("m=3\n", 1),
            ("n=3\n0 1\n", 2),
            ("n=3\n0 1 5 1\n", 2),
            ("n=3\n1 0 2 1\n", 2),
            ("n=3\n0 1 2 1\n\n0 1 2 1\n", 4),
            ("n=3\n0 1 2 1/0\n", 2),
        ] {
            assert_eq!(WeightFunction::parse_certificate(text).unwrap_err().line, line, "{text:?}");
        }
    }
}
