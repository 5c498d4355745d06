//! Line-oriented text format for presentations.
//!
//! ```text
//! # Leibniz pairs
//! operad LP
//! colors closed open
//! generator l2 (c,c) -> c degree 0 symmetry sign
//! generator n11 (c,o) -> o degree 0 symmetry regular
//! relation n11(l2(c1,c2),o1) - n11(c1,n11(c2,o1)) + n11(c2,n11(c1,o1))
//! differential n11 = n02(n10(c1),o1) - n02(o1,n10(c1))
//! ```
//!
//! Inputs list closed colors before open ones. Symmetry is `trivial`, `sign`, `regular` or a
//! pair `closed/open` such as `sign/regular`.

use crate::dgcalc::Derivation;
use crate::presentation::Presentation;
use crate::treeops::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}, column {column}: {msg}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub pres: Presentation,
    /// images of generators under a differential, by generator name
    pub differential: Vec<(String, Element)>,
}

impl SpecFile {
    pub fn new(pres: Presentation) -> SpecFile {
        SpecFile { pres, differential: Vec::new() }
    }

    pub fn with_derivation(pres: Presentation, d: &Derivation) -> SpecFile {
        let differential = d.images.iter().enumerate().filter_map(|(i, x)| x.as_ref().map(|x| (pres.gens.gens[i].name.clone(), x.clone()))).collect();
        SpecFile { pres, differential }
    }

    pub fn is_dg(&self) -> bool {
        !self.differential.is_empty()
    }

    pub fn derivation(&self) -> Derivation {
        let mut d = Derivation::zero(&self.pres.gens);
        for (name, x) in &self.differential {
            d.images[self.pres.gens.id(name) as usize] = Some(x.clone());
        }
        d
    }
}

fn sym_word(s: Sym) -> &'static str {
    match s {
        Sym::Trivial => "trivial",
        Sym::Sign => "sign",
        Sym::Regular => "regular",
    }
}

/// Text form of a presentation; fails for generators carrying a module symmetry.
pub fn emit(spec: &SpecFile) -> Result<String, String> {
    let p = &spec.pres;
    let mut s = format!("operad {}\ncolors closed open\n", p.name);
    for g in &p.gens.gens {
        let sym = match &g.sym {
            Symmetry::Block { closed, open } if closed == open => sym_word(*closed).to_string(),
            Symmetry::Block { closed, open } => format!("{}/{}", sym_word(*closed), sym_word(*open)),
            Symmetry::Module(_) => return Err(format!("generator {} has a module symmetry, which the text format cannot express", g.name)),
        };
        let inputs: Vec<&str> = std::iter::repeat("c").take(g.sig.n).chain(std::iter::repeat("o").take(g.sig.m)).collect();
        s.push_str(&format!("generator {} ({}) -> {} degree {} symmetry {}\n", g.name, inputs.join(","), g.sig.out.letter(), g.degree, sym));
    }
    for r in &p.relations {
        s.push_str(&format!("relation {}\n", r.display(&p.gens)));
    }
    for (name, x) in &spec.differential {
        s.push_str(&format!("differential {} = {}\n", name, x.display(&p.gens)));
    }
    Ok(s)
}

pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
    let mut name = String::from("unnamed");
    let mut gens: Vec<Generator> = Vec::new();
    let mut rels: Vec<(usize, usize, &str)> = Vec::new();
    let mut diffs: Vec<(usize, usize, &str, &str)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + kw.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
        let rest = rest.trim();
        let err = |column: usize, msg: String| SpecError { line, column, msg };
        match kw {
            "operad" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(rest_col, "expected a single operad name".into()));
                }
                name = rest.to_string();
            }
            "colors" => {
                let cs: Vec<&str> = rest.split([' ', ',']).filter(|s| !s.is_empty()).collect();
                let ok = cs.len() == 2 && Color::from_letter(cs[0]) == Some(Color::Closed) && Color::from_letter(cs[1]) == Some(Color::Open);
                if !ok {
                    return Err(err(rest_col, "the two colors are `closed open` (or `c o`)".into()));
                }
            }
            "generator" => gens.push(parse_generator(rest, rest_col).map_err(|(c, m)| err(c, m))?),
            "relation" => rels.push((line, rest_col, rest)),
            "differential" => {
                let Some((g, x)) = rest.split_once('=') else { return Err(err(rest_col, "expected `differential NAME = ELEMENT`".into())) };
                let xcol = rest_col + g.len() + 1 + (x.len() - x.trim_start().len());
                diffs.push((line, xcol, g.trim(), x.trim()));
            }
            _ => return Err(err(indent + 1, format!("unknown keyword `{}`", kw))),
        }
    }
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.name == g.name) {
            return Err(SpecError { line: 0, column: 0, msg: format!("generator {} declared twice", g.name) });
        }
    }
    let coll = Collection::new(gens);
    let element = |line: usize, col: usize, s: &str| {
        parse_element(&coll, s).map_err(|e| {
            let (pos, msg) = match e {
                ParseError::Syntax { pos, msg } => (pos, msg),
                e => (0, e.to_string()),
            };
            SpecError { line, column: col + pos, msg }
        })
    };
    let mut relations = Vec::new();
    for (line, col, s) in rels {
        relations.push(element(line, col, s)?);
    }
    let mut differential = Vec::new();
    for (line, col, g, s) in diffs {
        let Some(gi) = coll.find(g) else { return Err(SpecError { line, column: col, msg: format!("unknown generator {}", g) }) };
        let x = element(line, col, s)?;
        let gen = &coll.gens[gi];
        if x.sig != gen.sig {
            return Err(SpecError { line, column: col, msg: format!("d({}) must have signature {}, got {}", g, gen.sig, x.sig) });
        }
        if x.terms.iter().any(|(t, _)| t.degree(&coll) != gen.degree - 1) {
            return Err(SpecError { line, column: col, msg: format!("d({}) must have degree {}", g, gen.degree - 1) });
        }
        differential.push((g.to_string(), x));
    }
    Ok(SpecFile { pres: Presentation::new(&name, coll, relations), differential })
}

fn parse_generator(s: &str, col: usize) -> Result<Generator, (usize, String)> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let at = |w: &str| col + s.find(w).unwrap_or(0);
    let Some(&name) = words.first() else { return Err((col, "expected a generator name".into())) };
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name.starts_with(|c: char| c.is_ascii_digit()) {
        return Err((col, format!("bad generator name `{}`", name)));
    }
    let Some(inputs) = words.get(1) else { return Err((col + name.len(), "expected an input list like (c,o)".into())) };
    if !(inputs.starts_with('(') && inputs.ends_with(')')) {
        return Err((at(inputs), "expected an input list like (c,o)".into()));
    }
    let mut n = 0;
    let mut m = 0;
    for c in inputs[1..inputs.len() - 1].split(',').filter(|c| !c.trim().is_empty()) {
        match Color::from_letter(c.trim()) {
            Some(Color::Closed) if m > 0 => return Err((at(inputs), "closed inputs come before open ones".into())),
            Some(Color::Closed) => n += 1,
            Some(Color::Open) => m += 1,
            None => return Err((at(inputs), format!("unknown color `{}`", c.trim()))),
        }
    }
    if words.get(2) != Some(&"->") {
        return Err((at(inputs) + inputs.len(), "expected `->`".into()));
    }
    let Some(out) = words.get(3).and_then(|w| Color::from_letter(w)) else { return Err((at("->") + 2, "expected an output color".into())) };
    let sig = Sig::new(n, m, out);
    if !sig.is_valid() || n + m == 0 {
        return Err((at(inputs), format!("{} is not an allowed signature", sig)));
    }
    let mut degree = 0;
    let mut sym = Symmetry::uniform(Sym::Regular);
    let mut k = 4;
    while k < words.len() {
        let val = words.get(k + 1).ok_or((at(words[k]), format!("missing value after `{}`", words[k])))?;
        match words[k] {
            "degree" => degree = val.parse().map_err(|_| (at(val), format!("bad degree `{}`", val)))?,
            "symmetry" => sym = Symmetry::parse(val).ok_or((at(val), format!("bad symmetry `{}`", val)))?,
            w => return Err((at(w), format!("unknown attribute `{}`", w))),
        }
        k += 2;
    }
    Ok(Generator::new(name, sig, degree, sym))
}
