//! `KEY=VALUE` argument lists, e.g. `M=1024 N=256 K=128 eps=1e-3,1e-6`.
//!
//! Integers are plain decimal; reals take decimal or scientific notation.
//! A bare word (no `=`) is a mode such as `ratio-sweep`.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Debug, Default)]
pub struct KeyValues {
    pairs: BTreeMap<String, String>,
    words: Vec<String>,
}

impl KeyValues {
    pub fn parse<S: AsRef<str>>(args: &[S]) -> Result<Self, UsageError> {
        let mut kv = KeyValues::default();
        for arg in args {
            let arg = arg.as_ref();
            match arg.split_once('=') {
                Some((key, value)) => {
                    if key.is_empty() || value.is_empty() {
                        return Err(usage(format!("malformed argument '{arg}'")));
                    }
                    if kv
                        .pairs
                        .insert(key.to_string(), value.to_string())
                        .is_some()
                    {
                        return Err(usage(format!("'{key}' given twice")));
                    }
                }
                None => kv.words.push(arg.to_string()),
            }
        }
        Ok(kv)
    }

    /// Removes and returns the bare word `word` if present.
    pub fn take_word(&mut self, word: &str) -> bool {
        match self.words.iter().position(|w| w == word) {
            Some(i) => {
                self.words.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.pairs.contains_key(key)
    }

    pub fn take_raw(&mut self, key: &str) -> Option<String> {
        self.pairs.remove(key)
    }

    pub fn take_usize(&mut self, key: &str) -> Result<Option<usize>, UsageError> {
        self.pairs
            .remove(key)
            .map(|v| parse_usize(&v).map_err(|e| usage(format!("{key}: {e}"))))
            .transpose()
    }

    pub fn require_usize(&mut self, key: &str) -> Result<usize, UsageError> {
        self.take_usize(key)?
            .ok_or_else(|| usage(format!("missing {key}=<integer>")))
    }

    pub fn take_reals(&mut self, key: &str) -> Result<Option<Vec<f64>>, UsageError> {
        self.pairs
            .remove(key)
            .map(|v| {
                v.split(',')
                    .map(parse_real)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| usage(format!("{key}: {e}")))
            })
            .transpose()
    }

    /// `a..b` (powers of two from `a` to `b`), or a comma list.
    pub fn take_sizes(&mut self, key: &str) -> Result<Option<Vec<usize>>, UsageError> {
        let Some(raw) = self.pairs.remove(key) else {
            return Ok(None);
        };
        let err = |e: String| usage(format!("{key}: {e}"));
        if let Some((lo, hi)) = raw.split_once("..") {
            let lo = parse_usize(lo).map_err(err)?;
            let hi = parse_usize(hi).map_err(err)?;
            if lo == 0 || lo > hi {
                return Err(err(format!("empty range {raw}")));
            }
            let mut out = Vec::new();
            let mut m = lo;
            while m <= hi {
                out.push(m);
                m = m
                    .checked_mul(2)
                    .ok_or_else(|| err("range overflows".into()))?;
            }
            return Ok(Some(out));
        }
        raw.split(',')
            .map(parse_usize)
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
            .map_err(err)
    }

    /// `r:c[,r:c...]`.
    pub fn take_offsets(&mut self, key: &str) -> Result<Option<Vec<(usize, usize)>>, UsageError> {
        let Some(raw) = self.pairs.remove(key) else {
            return Ok(None);
        };
        raw.split(',')
            .map(|pair| {
                let (r, c) = pair
                    .split_once(':')
                    .ok_or_else(|| format!("expected row:col, got '{pair}'"))?;
                Ok((parse_usize(r)?, parse_usize(c)?))
            })
            .collect::<Result<Vec<_>, String>>()
            .map(Some)
            .map_err(|e| usage(format!("{key}: {e}")))
    }

    /// Errors on anything not consumed.
    pub fn finish(self) -> Result<(), UsageError> {
        if let Some(word) = self.words.first() {
            return Err(usage(format!("unexpected argument '{word}'")));
        }
        if let Some(key) = self.pairs.keys().next() {
            return Err(usage(format!("unknown key '{key}'")));
        }
        Ok(())
    }
}

pub fn parse_usize(s: &str) -> Result<usize, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("'{s}' is not a decimal integer"));
    }
    s.parse().map_err(|_| format!("'{s}' is out of range"))
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    // U+2212 shows up when values are pasted from typeset text.
    let normalized = s.trim().replace('\u{2212}', "-");
    let lower = normalized.to_ascii_lowercase();
    if lower.contains("inf") || lower.contains("nan") {
        return Err(format!("'{s}' is not a finite real"));
    }
    normalized
        .parse::<f64>()
        .map_err(|_| format!("'{s}' is not a real number"))
}
