//! Presentation files and parameterized families.
//!
//! ```text
//! # plane cusp, with a deformation tuple
//! ring Q[x, y];
//! local;
//! ideal: y^2 - x^3;
//! tuple: x;
//! ```
//!
//! Coefficients are integers or fractions; over `F_{p^m}` the identifier `a`
//! denotes the class of the variable of the defining polynomial
//! (`ring F_2^2 minpoly a^2 + a + 1 [x, y]`). The zero ideal is `ideal: ;`.
//! Statements end at `;` or at a line break.

mod parser;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::Field;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Local,
    Graded,
}

/// A finitely presented algebra `k[vars]/(gens)`, localized at the origin
/// (`Local`) or standard graded (`Graded`), with an optional deformation
/// tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    vars: Vec<String>,
    gens: Vec<Poly>,
    mode: Mode,
    tuple: Option<Vec<Poly>>,
}

impl Presentation {
    /// Validated constructor: every generator and tuple entry must vanish at
    /// the origin, and graded presentations need homogeneous generators.
    pub fn new(field: Field, vars: Vec<String>, gens: Vec<Poly>, mode: Mode, tuple: Option<Vec<Poly>>) -> Result<Self> {
        for g in gens.iter().chain(tuple.iter().flatten()) {
            if g.nvars() != vars.len() || g.field() != &field {
                return Err(Error::InvalidArgument("generator ring mismatch".into()));
            }
            if !field.is_zero(&g.constant_term()) {
                return Err(Error::ConstantTerm(g.format(&vars)));
            }
        }
        if mode == Mode::Graded {
            if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
                return Err(Error::Grading(g.format(&vars)));
            }
        }
        Ok(Presentation {
            field,
            vars,
            gens,
            mode,
            tuple,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        parser::parse(text)
    }

    /// Parse a polynomial expression in this presentation's variables.
    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        parser::parse_poly(&self.field, &self.vars, text)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_graded(&self) -> bool {
        self.mode == Mode::Graded
    }

    pub fn tuple(&self) -> Option<&[Poly]> {
        self.tuple.as_deref()
    }

    /// Same presentation with the deformation tuple replaced.
    pub fn with_tuple(&self, tuple: Option<Vec<Poly>>) -> Result<Self> {
        Presentation::new(self.field.clone(), self.vars.clone(), self.gens.clone(), self.mode, tuple)
    }

    /// Same ring over another coefficient field, coefficients mapped by `f`.
    pub fn map_field(&self, target: &Field, f: impl Fn(&crate::exactcore::Scalar) -> crate::exactcore::Scalar) -> Result<Self> {
        let map = |p: &Poly| p.map_coeffs(target, &f);
        Presentation::new(
            target.clone(),
            self.vars.clone(),
            self.gens.iter().map(map).collect(),
            self.mode,
            self.tuple.as_ref().map(|t| t.iter().map(map).collect()),
        )
    }

    /// Canonical text; parsing it returns an equal presentation.
    pub fn to_text(&self) -> String {
        let list = |ps: &[Poly]| -> String {
            ps.iter()
                .map(|p| p.format(&self.vars))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!(
            "ring {}[{}];\n{};\n",
            self.field,
            self.vars.join(", "),
            match self.mode {
                Mode::Local => "local",
                Mode::Graded => "graded",
            }
        );
        if self.gens.is_empty() {
            s.push_str("ideal: ;\n");
        } else {
            s.push_str(&format!("ideal: {};\n", list(&self.gens)));
        }
        if let Some(t) = &self.tuple {
            s.push_str(&format!("tuple: {};\n", list(t)));
        }
        s
    }
}

/// Presentation text with an integer placeholder `w`, valid on an inclusive
/// range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTemplate {
    pub body: String,
    pub lo: i64,
    pub hi: i64,
}

impl FamilyTemplate {
    pub fn new(body: impl Into<String>, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
        }
        Ok(FamilyTemplate {
            body: body.into(),
            lo,
            hi,
        })
    }

    /// Text with every standalone `w` replaced by the value.
    pub fn substitute(&self, w: i64) -> String {
        let value = if w < 0 { format!("({w})") } else { w.to_string() };
        let mut out = String::with_capacity(self.body.len());
        let chars: Vec<char> = self.body.chars().collect();
        let is_word = |c: char| c.is_alphanumeric() || c == '_';
        let mut in_comment = false;
        for (i, &c) in chars.iter().enumerate() {
            if c == '#' {
                in_comment = true;
            } else if c == '\n' {
                in_comment = false;
            }
            let standalone = c == 'w'
                && (i == 0 || !is_word(chars[i - 1]))
                && (i + 1 == chars.len() || !is_word(chars[i + 1]));
            if standalone && !in_comment {
                out.push_str(&value);
            } else {
                out.push(c);
            }
        }
        out
    }

    pub fn instantiate(&self, w: i64) -> Result<Presentation> {
        if w < self.lo || w > self.hi {
            return Err(Error::Range {
                value: w,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Presentation::parse(&self.substitute(w)).map_err(|e| Error::Template {
            w,
            source: Box::new(e),
        })
    }

    pub fn range(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}
