//! Deterministic random presentations.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// A polynomial as integer-coefficient terms.
#[derive(Clone, Debug)]
pub struct Poly {
    pub terms: Vec<(i64, Vec<u32>)>,
}

impl Poly {
    /// Merges equal monomials and drops coefficients that vanish mod `p`
    /// (`p = 0` for the rationals).
    fn normalized(mut self, p: i64) -> Poly {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(i64, Vec<u32>)> = vec![];
        for (c, m) in self.terms {
            match out.last_mut() {
                Some((c0, m0)) if *m0 == m => *c0 += c,
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| if p == 0 { *c != 0 } else { c.rem_euclid(p) != 0 });
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, perm: &[usize]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = vec![];
            for (v, &e) in m.iter().enumerate() {
                let name = VARS[perm[v]];
                match e {
                    0 => {}
                    1 => factors.push(name.into()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let neg = *c < 0;
            let a = c.abs();
            let body = match (a, factors.is_empty()) {
                (_, true) => a.to_string(),
                (1, false) => factors.join("*"),
                _ => format!("{a}*{}", factors.join("*")),
            };
            match (i, neg) {
                (0, false) => s.push_str(&body),
                (0, true) => s.push_str(&format!("-{body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
                (_, true) => s.push_str(&format!(" - {body}")),
            }
        }
        s
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.iter().sum()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    /// 0 for the rationals.
    pub p: i64,
    pub nvars: usize,
    pub graded: bool,
    pub gens: Vec<Poly>,
    /// Variable renaming applied when rendering.
    pub perm: Vec<usize>,
}

impl Member {
    pub fn field_name(&self) -> String {
        if self.p == 0 { "Q".into() } else { format!("F_{}", self.p) }
    }

    pub fn text(&self) -> String {
        let vars: Vec<&str> = VARS[..self.nvars].to_vec();
        let gens: Vec<String> = self.gens.iter().map(|g| g.render(&self.perm)).collect();
        format!(
            "ring {}[{}];\n{};\nideal: {};\n",
            self.field_name(),
            vars.join(", "),
            if self.graded { "graded" } else { "local" },
            gens.join(", ")
        )
    }
}

pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for e in (0..=deg).rev() {
        for mut rest in monomials(nvars - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn coefficient(rng: &mut ChaCha8Rng, p: i64) -> i64 {
    if p == 0 {
        let a = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) { a } else { -a }
    } else {
        rng.gen_range(1..p)
    }
}

fn random_term(rng: &mut ChaCha8Rng, nvars: usize, lo: u32, hi: u32, p: i64) -> (i64, Vec<u32>) {
    let d = rng.gen_range(lo..=hi);
    let ms = monomials(nvars, d);
    (coefficient(rng, p), ms.choose(rng).unwrap().clone())
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, lo: u32, hi: u32, terms: usize, p: i64) -> Poly {
    loop {
        let t = (0..terms).map(|_| random_term(rng, nvars, lo, hi, p)).collect();
        let f = Poly { terms: t }.normalized(p);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Local presentations over `F_2`, `F_3` or `Q`, with at most three
/// variables and generators of degree at most four.
pub fn random_local(rng: &mut ChaCha8Rng) -> Member {
    let p = *[2, 3, 0].choose(rng).unwrap();
    let nvars = rng.gen_range(1..=3);
    let ngens = rng.gen_range(1..=nvars.min(2));
    let gens = (0..ngens)
        .map(|_| {
            let lo = if rng.gen_bool(0.15) { 1 } else { 2 };
            let k = rng.gen_range(1..=3);
            random_poly(rng, nvars, lo, 4, k, p)
        })
        .collect();
    Member {
        p,
        nvars,
        graded: false,
        gens,
        perm: (0..nvars).collect(),
    }
}

/// Adds terms of degree at least `from` to every generator and sometimes
/// renames the variables. The result agrees with `m` through order `from`.
pub fn perturb(rng: &mut ChaCha8Rng, m: &Member, from: u32) -> Member {
    let mut out = m.clone();
    for g in &mut out.gens {
        let extra = rng.gen_range(0..=2);
        let mut terms = g.terms.clone();
        for _ in 0..extra {
            terms.push(random_term(rng, m.nvars, from, 4, m.p));
        }
        let h = Poly { terms }.normalized(m.p);
        if !h.is_zero() {
            *g = h;
        }
    }
    if rng.gen_bool(0.5) {
        out.perm.shuffle(rng);
    }
    out
}

/// Homogeneous presentations over prime fields.
pub fn random_graded(rng: &mut ChaCha8Rng) -> Member {
    let p = *[2, 3, 5, 101].choose(rng).unwrap();
    let nvars = rng.gen_range(2..=3);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=4);
            random_poly(rng, nvars, d, d, k, p)
        })
        .collect();
    Member {
        p,
        nvars,
        graded: true,
        gens,
        perm: (0..nvars).collect(),
    }
}

/// Monomial ideals in up to four variables.
pub fn random_monomial(rng: &mut ChaCha8Rng) -> Member {
    let nvars = rng.gen_range(2..=4);
    let ngens = rng.gen_range(1..=4);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            Poly { terms: vec![(1, monomials(nvars, d).choose(rng).unwrap().clone())] }
        })
        .collect();
    Member {
        p: 3,
        nvars,
        graded: true,
        gens,
        perm: (0..nvars).collect(),
    }
}
