use alloc::string::String;
use core::fmt;
use core::fmt::Write;

use super::Series;

const ONE_VAR: [&str; 1] = ["x"];
const MANY_VARS: [&str; 3] = ["X", "Y", "Z"];

impl Series {
    /// Default variable names: `x` alone, otherwise `X, Y, Z`.
    pub fn default_names(&self) -> &'static [&'static str] {
        if self.layout.vars == 1 {
            &ONE_VAR
        } else {
            &MANY_VARS[..self.layout.vars]
        }
    }

    /// Pretty form with the given variable names, e.g.
    /// `x - 1/2·x^2 + 2(t⊗t)·X·Y`.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        let terms = self.terms();
        if let [(exps, c)] = terms.as_slice() {
            if exps.iter().all(|&e| e == 0) {
                return alloc::format!("{c}");
            }
        }
        let mut out = String::new();
        for (exps, c) in terms {
            let mut mono = String::new();
            for (name, &e) in names.iter().zip(&exps) {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('·');
                }
                mono.push_str(name);
                if e > 1 {
                    let _ = write!(mono, "^{e}");
                }
            }
            let mut coeff = String::new();
            let neg = c.fmt_coefficient(&mut coeff, mono.is_empty());
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&coeff);
            if !coeff.is_empty() && !mono.is_empty() {
                out.push('·');
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.default_names()))
    }
}
