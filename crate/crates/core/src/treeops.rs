//! Two-colored trees, generating collections and free operad elements.

use crate::kernel::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Closed,
    Open,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::Closed => 'c',
            Color::Open => 'o',
        }
    }
    pub fn from_letter(s: &str) -> Option<Color> {
        match s {
            "c" | "closed" => Some(Color::Closed),
            "o" | "open" => Some(Color::Open),
            _ => None,
        }
    }
}

/// Arity (n closed inputs, m open inputs) and output color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sig {
    pub n: usize,
    pub m: usize,
    pub out: Color,
}

impl Sig {
    pub fn new(n: usize, m: usize, out: Color) -> Sig {
        Sig { n, m, out }
    }
    pub fn c(n: usize) -> Sig {
        Sig::new(n, 0, Color::Closed)
    }
    pub fn o(n: usize, m: usize) -> Sig {
        Sig::new(n, m, Color::Open)
    }
    pub fn arity(&self) -> usize {
        self.n + self.m
    }
    pub fn count(&self, c: Color) -> usize {
        match c {
            Color::Closed => self.n,
            Color::Open => self.m,
        }
    }
    pub fn is_valid(&self) -> bool {
        !(self.out == Color::Closed && self.m > 0)
    }
    pub fn group_order(&self) -> usize {
        factorial(self.n) * factorial(self.m)
    }
    pub fn parse(s: &str) -> Option<Sig> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (nums, col) = s.split_once(';')?;
        let (a, b) = nums.split_once(',')?;
        let sig = Sig::new(a.trim().parse().ok()?, b.trim().parse().ok()?, Color::from_letter(col.trim())?);
        sig.is_valid().then_some(sig)
    }
    /// All valid signatures with 1 <= n + m <= k.
    pub fn all_up_to(k: usize) -> Vec<Sig> {
        let mut v = Vec::new();
        for t in 1..=k {
            for n in 0..=t {
                let m = t - n;
                if m == 0 {
                    v.push(Sig::c(n));
                }
                v.push(Sig::o(n, m));
            }
        }
        v
    }
}

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({},{};{})", self.n, self.m, self.out.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sym {
    Trivial,
    Sign,
    Regular,
}

impl Sym {
    pub fn twist(self) -> Sym {
        match self {
            Sym::Trivial => Sym::Sign,
            Sym::Sign => Sym::Trivial,
            Sym::Regular => Sym::Regular,
        }
    }
    fn name(self) -> &'static str {
        match self {
            Sym::Trivial => "trivial",
            Sym::Sign => "sign",
            Sym::Regular => "regular",
        }
    }
}

/// A right representation of S_n x S_m given on a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    pub sig: Sig,
    pub dim: usize,
    /// action[rank(sc) * m! + rank(so)][b] = b . (sc, so)
    pub action: Vec<Vec<SVec>>,
}

impl Rep {
    pub fn pair_rank(sig: Sig, pc: &[usize], po: &[usize]) -> usize {
        perm_rank(pc) * factorial(sig.m) + perm_rank(po)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Symmetry {
    Block { closed: Sym, open: Sym },
    Module(Arc<Rep>),
}

impl Symmetry {
    pub fn uniform(s: Sym) -> Symmetry {
        Symmetry::Block { closed: s, open: s }
    }
    pub fn parse(s: &str) -> Option<Symmetry> {
        let one = |t: &str| match t {
            "trivial" => Some(Sym::Trivial),
            "sign" => Some(Sym::Sign),
            "regular" | "none" => Some(Sym::Regular),
            _ => None,
        };
        match s.split_once('/') {
            Some((a, b)) => Some(Symmetry::Block { closed: one(a)?, open: one(b)? }),
            None => one(s).map(Symmetry::uniform),
        }
    }
    pub fn twisted(&self) -> Symmetry {
        match self {
            Symmetry::Block { closed, open } => Symmetry::Block { closed: closed.twist(), open: open.twist() },
            Symmetry::Module(_) => panic!("sign twist of a module symmetry is not supported"),
        }
    }
    pub fn describe(&self) -> String {
        match self {
            Symmetry::Block { closed, open } if closed == open => closed.name().into(),
            Symmetry::Block { closed, open } => format!("{}/{}", closed.name(), open.name()),
            Symmetry::Module(r) => format!("module[{}]", r.dim),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub sig: Sig,
    pub degree: i64,
    pub sym: Symmetry,
}

impl Generator {
    pub fn new(name: &str, sig: Sig, degree: i64, sym: Symmetry) -> Generator {
        Generator { name: name.into(), sig, degree, sym }
    }
    fn block_sizes(&self) -> (usize, usize) {
        match &self.sym {
            Symmetry::Block { closed, open } => (
                if *closed == Sym::Regular { factorial(self.sig.n) } else { 1 },
                if *open == Sym::Regular { factorial(self.sig.m) } else { 1 },
            ),
            Symmetry::Module(r) => (r.dim, 1),
        }
    }
    /// Number of decorations (basis elements of the generator module).
    pub fn dim(&self) -> usize {
        let (a, b) = self.block_sizes();
        a * b
    }
    fn dec_perms(&self, dec: usize) -> (Perm, Perm) {
        let (_, ob) = self.block_sizes();
        let (cr, or) = (dec / ob, dec % ob);
        let Symmetry::Block { closed, open } = &self.sym else { unreachable!() };
        let pc = if *closed == Sym::Regular { perm_unrank(self.sig.n, cr) } else { perm_identity(self.sig.n) };
        let po = if *open == Sym::Regular { perm_unrank(self.sig.m, or) } else { perm_identity(self.sig.m) };
        (pc, po)
    }
    fn dec_of(&self, pc: &[usize], po: &[usize]) -> usize {
        let (_, ob) = self.block_sizes();
        let Symmetry::Block { closed, open } = &self.sym else { unreachable!() };
        let cr = if *closed == Sym::Regular { perm_rank(pc) } else { 0 };
        let or = if *open == Sym::Regular { perm_rank(po) } else { 0 };
        cr * ob + or
    }
    /// dec . (pc, po) as a combination of decorations.
    pub fn act_dec(&self, dec: usize, pc: &[usize], po: &[usize]) -> Vec<(usize, Q)> {
        match &self.sym {
            Symmetry::Module(r) => r.action[Rep::pair_rank(self.sig, pc, po)][dec].clone(),
            Symmetry::Block { closed, open } => {
                let (gc, go) = self.dec_perms(dec);
                let mut sign = 1;
                let nc = match closed {
                    Sym::Regular => perm_compose(&gc, pc),
                    Sym::Sign => {
                        sign *= perm_sign(pc);
                        gc
                    }
                    Sym::Trivial => gc,
                };
                let no = match open {
                    Sym::Regular => perm_compose(&go, po),
                    Sym::Sign => {
                        sign *= perm_sign(po);
                        go
                    }
                    Sym::Trivial => go,
                };
                vec![(self.dec_of(&nc, &no), Q::sign(sign))]
            }
        }
    }
    /// For each slot (closed slots then open slots), the index of the canonical child sitting there.
    pub fn slot_to_child(&self, dec: usize) -> Vec<usize> {
        match &self.sym {
            Symmetry::Module(_) => (0..self.sig.arity()).collect(),
            Symmetry::Block { .. } => {
                let (gc, go) = self.dec_perms(dec);
                let ic = perm_inverse(&gc);
                let io = perm_inverse(&go);
                ic.iter().copied().chain(io.iter().map(|&j| j + self.sig.n)).collect()
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Collection {
    pub gens: Vec<Generator>,
}

impl Collection {
    pub fn new(gens: Vec<Generator>) -> Collection {
        Collection { gens }
    }
    pub fn find(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }
    pub fn gen(&self, i: u16) -> &Generator {
        &self.gens[i as usize]
    }
    pub fn id(&self, name: &str) -> u16 {
        self.find(name).unwrap_or_else(|| panic!("unknown generator {}", name)) as u16
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuspensionKind {
    Lambda,
    LambdaInverse,
    LambdaC,
    LinearDual,
}

/// Degree shift and sign twist of every generator.
pub fn suspend_collection(e: &Collection, kind: SuspensionKind) -> Collection {
    Collection::new(
        e.gens
            .iter()
            .map(|g| {
                let k = g.sig.arity() as i64;
                let n = g.sig.n as i64;
                let (degree, sym) = match kind {
                    SuspensionKind::Lambda => (g.degree + k - 1, g.sym.twisted()),
                    SuspensionKind::LambdaInverse => (g.degree - k + 1, g.sym.twisted()),
                    SuspensionKind::LambdaC => {
                        let shift = if g.sig.out == Color::Closed { 1 - n } else { -n };
                        let sym = match &g.sym {
                            Symmetry::Block { closed, open } => Symmetry::Block { closed: closed.twist(), open: *open },
                            s => s.clone(),
                        };
                        (g.degree + shift, sym)
                    }
                    SuspensionKind::LinearDual => (-g.degree, g.sym.clone()),
                };
                Generator { name: g.name.clone(), sig: g.sig, degree, sym }
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Trees

/// Leaf label; `idx` is 0-based, printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub color: Color,
    pub idx: u16,
}

impl Label {
    pub fn c(i: usize) -> Label {
        Label { color: Color::Closed, idx: i as u16 }
    }
    pub fn o(i: usize) -> Label {
        Label { color: Color::Open, idx: i as u16 }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}{}", self.color.letter(), self.idx + 1)
    }
}

/// A canonical tree: children sorted closed-edge first, each block by minimal leaf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(Label),
    Vert(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub gen: u16,
    pub dec: u32,
    pub kids: Vec<Node>,
}

impl Node {
    pub fn min_label(&self) -> Label {
        match self {
            Node::Leaf(l) => *l,
            Node::Vert(v) => v.kids.iter().map(|k| k.min_label()).min().expect("vertex without inputs"),
        }
    }
    pub fn out_color(&self, e: &Collection) -> Color {
        match self {
            Node::Leaf(l) => l.color,
            Node::Vert(v) => e.gen(v.gen).sig.out,
        }
    }
    pub fn weight(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vert(v) => 1 + v.kids.iter().map(|k| k.weight()).sum::<usize>(),
        }
    }
    pub fn degree(&self, e: &Collection) -> i64 {
        match self {
            Node::Leaf(_) => 0,
            Node::Vert(v) => e.gen(v.gen).degree + v.kids.iter().map(|k| k.degree(e)).sum::<i64>(),
        }
    }
    pub fn leaves(&self, out: &mut Vec<Label>) {
        match self {
            Node::Leaf(l) => out.push(*l),
            Node::Vert(v) => v.kids.iter().for_each(|k| k.leaves(out)),
        }
    }
    pub fn sig(&self, e: &Collection) -> Sig {
        let mut ls = Vec::new();
        self.leaves(&mut ls);
        let n = ls.iter().filter(|l| l.color == Color::Closed).count();
        Sig::new(n, ls.len() - n, self.out_color(e))
    }
    /// Vertices in depth-first preorder.
    pub fn vertices(&self) -> Vec<&Vertex> {
        let mut out = Vec::new();
        fn go<'a>(n: &'a Node, out: &mut Vec<&'a Vertex>) {
            if let Node::Vert(v) = n {
                out.push(v);
                v.kids.iter().for_each(|k| go(k, out));
            }
        }
        go(self, &mut out);
        out
    }
    pub fn gen_count(&self, pred: &dyn Fn(u16) -> bool) -> usize {
        self.vertices().iter().filter(|v| pred(v.gen)).count()
    }
    pub fn relabel(&self, f: &dyn Fn(Label) -> Label) -> Node {
        match self {
            Node::Leaf(l) => Node::Leaf(f(*l)),
            Node::Vert(v) => Node::Vert(Vertex { gen: v.gen, dec: v.dec, kids: v.kids.iter().map(|k| k.relabel(f)).collect() }),
        }
    }
    pub fn corolla(e: &Collection, gen: u16) -> Node {
        let s = e.gen(gen).sig;
        let kids = (0..s.n).map(|i| Node::Leaf(Label::c(i))).chain((0..s.m).map(|i| Node::Leaf(Label::o(i)))).collect();
        Node::Vert(Vertex { gen, dec: 0, kids })
    }
}

/// Tree with vertex ids; children need not be in canonical order.
#[derive(Clone, Debug)]
pub enum Raw {
    Leaf(Label),
    Vert { id: usize, gen: u16, dec: usize, kids: Vec<Raw> },
}

impl Raw {
    fn min_label(&self) -> Label {
        match self {
            Raw::Leaf(l) => *l,
            Raw::Vert { kids, .. } => kids.iter().map(|k| k.min_label()).min().unwrap(),
        }
    }
    pub fn from_node(n: &Node, next: &mut usize) -> Raw {
        match n {
            Node::Leaf(l) => Raw::Leaf(*l),
            Node::Vert(v) => {
                let id = *next;
                *next += 1;
                Raw::Vert { id, gen: v.gen, dec: v.dec as usize, kids: v.kids.iter().map(|k| Raw::from_node(k, next)).collect() }
            }
        }
    }
    pub fn relabel(&mut self, f: &dyn Fn(Label) -> Label) {
        match self {
            Raw::Leaf(l) => *l = f(*l),
            Raw::Vert { kids, .. } => kids.iter_mut().for_each(|k| k.relabel(f)),
        }
    }
    fn collect_gens(&self, out: &mut HashMap<usize, u16>) {
        if let Raw::Vert { id, gen, kids, .. } = self {
            out.insert(*id, *gen);
            kids.iter().for_each(|k| k.collect_gens(out));
        }
    }
    /// Replaces leaves by raw subtrees (by label).
    pub fn graft_leaves(self, f: &mut dyn FnMut(Label) -> Raw) -> Raw {
        match self {
            Raw::Leaf(l) => f(l),
            Raw::Vert { id, gen, dec, kids } => Raw::Vert { id, gen, dec, kids: kids.into_iter().map(|k| k.graft_leaves(f)).collect() },
        }
    }
}

fn canon_rec(e: &Collection, raw: &Raw, dfs: &mut Vec<usize>) -> Vec<(Node, Q)> {
    match raw {
        Raw::Leaf(l) => vec![(Node::Leaf(*l), Q::one())],
        Raw::Vert { id, gen, dec, kids } => {
            let g = e.gen(*gen);
            let n = g.sig.n;
            assert_eq!(kids.len(), g.sig.arity(), "arity mismatch at {}", g.name);
            let mins: Vec<Label> = kids.iter().map(|k| k.min_label()).collect();
            let mut pc: Vec<usize> = (0..n).collect();
            pc.sort_by_key(|&i| mins[i]);
            let mut po: Vec<usize> = (0..g.sig.m).collect();
            po.sort_by_key(|&i| mins[n + i]);
            dfs.push(*id);
            let order: Vec<usize> = pc.iter().copied().chain(po.iter().map(|&i| i + n)).collect();
            let mut alts: Vec<(Vec<Node>, Q)> = vec![(Vec::new(), Q::one())];
            for &k in &order {
                let sub = canon_rec(e, &kids[k], dfs);
                let mut next = Vec::with_capacity(alts.len() * sub.len());
                for (pre, c) in &alts {
                    for (t, d) in &sub {
                        let mut v = pre.clone();
                        v.push(t.clone());
                        next.push((v, c * d));
                    }
                }
                alts = next;
            }
            let decs = g.act_dec(*dec, &pc, &po);
            let mut out = Vec::with_capacity(alts.len() * decs.len());
            for (d, a) in &decs {
                for (ks, c) in &alts {
                    out.push((Node::Vert(Vertex { gen: *gen, dec: *d as u32, kids: ks.clone() }), c * a));
                }
            }
            out
        }
    }
}

/// Canonical form of a raw tree whose vertices sit in the tensor order `order` (ids);
/// the Koszul sign of moving them into depth-first order uses `vdeg`.
pub fn canonicalize(e: &Collection, raw: &Raw, order: &[usize], vdeg: &dyn Fn(u16) -> i64) -> Vec<(Node, Q)> {
    let mut dfs = Vec::new();
    let alts = canon_rec(e, raw, &mut dfs);
    let mut gens = HashMap::new();
    raw.collect_gens(&mut gens);
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let perm: Vec<usize> = dfs.iter().map(|id| pos[id]).collect();
    let degs: Vec<i64> = order.iter().map(|id| vdeg(gens[id])).collect();
    let s = Q::sign(koszul_sign(&perm, &degs));
    alts.into_iter().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t, c * &s)).collect()
}

pub fn koszul_deg(e: &Collection) -> impl Fn(u16) -> i64 + '_ {
    move |g| e.gen(g).degree
}

// ---------------------------------------------------------------------------
// Elements

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub sig: Sig,
    pub terms: BTreeMap<Node, Q>,
}

impl Element {
    pub fn zero(sig: Sig) -> Element {
        Element { sig, terms: BTreeMap::new() }
    }
    pub fn from_tree(sig: Sig, t: Node) -> Element {
        let mut x = Element::zero(sig);
        x.add_term(t, &Q::one());
        x
    }
    pub fn add_term(&mut self, t: Node, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).unwrap();
            self.terms.remove(&key);
        }
    }
    pub fn add_terms(&mut self, ts: impl IntoIterator<Item = (Node, Q)>, scale: &Q) {
        for (t, c) in ts {
            self.add_term(t, &(&c * scale));
        }
    }
    pub fn add(&mut self, o: &Element, scale: &Q) {
        for (t, c) in &o.terms {
            self.add_term(t.clone(), &(c * scale));
        }
    }
    pub fn scaled(&self, s: &Q) -> Element {
        let mut x = Element::zero(self.sig);
        x.add(self, s);
        x
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn display(&self, e: &Collection) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&format!("{}*", a));
            }
            s.push_str(&print_tree(e, t));
        }
        s
    }
}

/// Prints a canonical tree in slot order.
pub fn print_tree(e: &Collection, t: &Node) -> String {
    match t {
        Node::Leaf(l) => l.to_string(),
        Node::Vert(v) => {
            let g = e.gen(v.gen);
            let slots = g.slot_to_child(v.dec as usize);
            let inner: Vec<String> = slots.iter().map(|&k| print_tree(e, &v.kids[k])).collect();
            match g.sym {
                Symmetry::Module(_) => format!("{}[{}]({})", g.name, v.dec, inner.join(",")),
                _ => format!("{}({})", g.name, inner.join(",")),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator '{name}' expects {expected} inputs, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("input {slot} of '{name}' has the wrong color")]
    SlotColor { name: String, slot: usize },
    #[error("leaf labels must be c1..cn, o1..om each used once")]
    Labels,
    #[error("terms have different signatures: {0} vs {1}")]
    MixedSig(Sig, Sig),
    #[error("decoration {dec} out of range for '{name}'")]
    Decoration { name: String, dec: usize },
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    e: &'a Collection,
    next_id: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn ident(&mut self) -> Option<String> {
        self.ws();
        let st = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if st == self.pos || self.s[st].is_ascii_digit() {
            self.pos = st;
            return None;
        }
        Some(String::from_utf8_lossy(&self.s[st..self.pos]).into())
    }
    fn number(&mut self) -> Option<Q> {
        self.ws();
        let st = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        if st == self.pos {
            return None;
        }
        Q::parse(std::str::from_utf8(&self.s[st..self.pos]).unwrap())
    }
    fn tree(&mut self) -> Result<Raw, ParseError> {
        let Some(name) = self.ident() else { return self.err("expected a tree") };
        let after = self.peek();
        if after != Some(b'(') && after != Some(b'[') {
            let color = Color::from_letter(&name[..1]);
            if let (Some(color), Ok(i)) = (color, name[1..].parse::<usize>()) {
                if i >= 1 {
                    return Ok(Raw::Leaf(Label { color, idx: (i - 1) as u16 }));
                }
            }
            return self.err(&format!("'{}' is not a leaf label", name));
        }
        let gi = self.e.find(&name).ok_or_else(|| ParseError::UnknownGenerator(name.clone()))?;
        let g = &self.e.gens[gi];
        let mut dec = 0;
        if self.eat(b'[') {
            let Some(d) = self.number() else { return self.err("expected decoration index") };
            if !self.eat(b']') {
                return self.err("expected ']'");
            }
            dec = d.to_f64() as usize;
            if dec >= g.dim() {
                return Err(ParseError::Decoration { name, dec });
            }
        }
        let id = self.next_id;
        self.next_id += 1;
        if !self.eat(b'(') {
            return self.err("expected '('");
        }
        let mut kids = vec![self.tree()?];
        while self.eat(b',') {
            kids.push(self.tree()?);
        }
        if !self.eat(b')') {
            return self.err("expected ')'");
        }
        if kids.len() != g.sig.arity() {
            return Err(ParseError::Arity { name, expected: g.sig.arity(), got: kids.len() });
        }
        for (s, k) in kids.iter().enumerate() {
            let want = if s < g.sig.n { Color::Closed } else { Color::Open };
            let have = match k {
                Raw::Leaf(l) => l.color,
                Raw::Vert { gen, .. } => self.e.gen(*gen).sig.out,
            };
            if want != have {
                return Err(ParseError::SlotColor { name, slot: s + 1 });
            }
        }
        Ok(Raw::Vert { id, gen: gi as u16, dec, kids })
    }
}

fn raw_leaves(r: &Raw, out: &mut Vec<Label>) {
    match r {
        Raw::Leaf(l) => out.push(*l),
        Raw::Vert { kids, .. } => kids.iter().for_each(|k| raw_leaves(k, out)),
    }
}

/// Parses a linear combination like `2*f2(c1,c2) - 1/2*e11(c1,o1)`.
pub fn parse_element(e: &Collection, text: &str) -> Result<Element, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, e, next_id: 0 };
    let mut out: Option<Element> = None;
    let mut first = true;
    loop {
        if p.peek().is_none() {
            if first {
                return p.err("empty expression");
            }
            break;
        }
        let mut coef = Q::one();
        if p.eat(b'-') {
            coef = -coef;
        } else if !p.eat(b'+') && !first {
            return p.err("expected '+' or '-'");
        }
        first = false;
        if let Some(c) = p.number() {
            coef = &coef * &c;
            p.eat(b'*');
        }
        p.next_id = 0;
        let raw = p.tree()?;
        let mut ls = Vec::new();
        raw_leaves(&raw, &mut ls);
        let n = ls.iter().filter(|l| l.color == Color::Closed).count();
        let m = ls.len() - n;
        let mut sorted = ls.clone();
        sorted.sort();
        let expect: Vec<Label> = (0..n).map(Label::c).chain((0..m).map(Label::o)).collect();
        if sorted != expect {
            return Err(ParseError::Labels);
        }
        let out_color = match &raw {
            Raw::Leaf(l) => l.color,
            Raw::Vert { gen, .. } => e.gen(*gen).sig.out,
        };
        let sig = Sig::new(n, m, out_color);
        let order: Vec<usize> = (0..p.next_id).collect();
        let terms = canonicalize(e, &raw, &order, &koszul_deg(e));
        let x = out.get_or_insert_with(|| Element::zero(sig));
        if x.sig != sig {
            return Err(ParseError::MixedSig(x.sig, sig));
        }
        x.add_terms(terms, &coef);
    }
    Ok(out.unwrap())
}

pub fn parse_tree(e: &Collection, text: &str) -> Result<Element, ParseError> {
    parse_element(e, text)
}

// ---------------------------------------------------------------------------
// Operations

/// Partial composition x o_slot y with the labeling conventions of the two colors.
pub fn graft_trees(e: &Collection, x: &Node, xsig: Sig, slot: Label, y: &Node, ysig: Sig, vdeg: &dyn Fn(u16) -> i64) -> (Sig, Vec<(Node, Q)>) {
    assert_eq!(ysig.out, slot.color, "output color of inner tree must match the slot");
    let (nx, mx) = (xsig.n, xsig.m);
    let (ny, my) = (ysig.n, ysig.m);
    let i = slot.idx;
    let sig = match slot.color {
        Color::Open => Sig::new(nx + ny, mx + my - 1, xsig.out),
        Color::Closed => Sig::new(nx + ny - 1, mx + my, xsig.out),
    };
    let mut next = 0;
    let mut rx = Raw::from_node(x, &mut next);
    let split = next;
    let mut ry = Raw::from_node(y, &mut next);
    let total = next;
    let same = slot.color;
    let ycount = ysig.count(same) as u16;
    let xother = xsig.count(match same {
        Color::Open => Color::Closed,
        Color::Closed => Color::Open,
    }) as u16;
    rx.relabel(&|l: Label| {
        if l.color == same && l.idx > i {
            Label { color: l.color, idx: l.idx + ycount - 1 }
        } else {
            l
        }
    });
    ry.relabel(&|l: Label| {
        if l.color == same {
            Label { color: l.color, idx: l.idx + i }
        } else {
            Label { color: l.color, idx: l.idx + xother }
        }
    });
    let mut ry = Some(ry);
    let target = Label { color: same, idx: i };
    let mut hit = false;
    let raw = rx.graft_leaves(&mut |l| {
        if l == target && !hit {
            hit = true;
            ry.take().unwrap()
        } else {
            Raw::Leaf(l)
        }
    });
    assert!(hit, "slot {} not found", slot);
    let _ = split;
    let order: Vec<usize> = (0..total).collect();
    (sig, canonicalize(e, &raw, &order, vdeg))
}

/// Bilinear extension of grafting. `slot` is the 0-based input of the given color in x.
pub fn graft(e: &Collection, x: &Element, slot: Label, y: &Element) -> Element {
    let deg = koszul_deg(e);
    let mut out: Option<Element> = None;
    for (tx, cx) in &x.terms {
        for (ty, cy) in &y.terms {
            let (sig, terms) = graft_trees(e, tx, x.sig, slot, ty, y.sig, &deg);
            out.get_or_insert_with(|| Element::zero(sig)).add_terms(terms, &(cx * cy));
        }
    }
    out.unwrap_or_else(|| {
        let sig = match slot.color {
            Color::Open => Sig::new(x.sig.n + y.sig.n, x.sig.m + y.sig.m - 1, x.sig.out),
            Color::Closed => Sig::new(x.sig.n + y.sig.n - 1, x.sig.m + y.sig.m, x.sig.out),
        };
        Element::zero(sig)
    })
}

/// Right action: x . (sc, so) relabels leaf i by the preimage of i.
pub fn act_tree(e: &Collection, t: &Node, pc: &[usize], po: &[usize], vdeg: &dyn Fn(u16) -> i64) -> Vec<(Node, Q)> {
    let ic = perm_inverse(pc);
    let io = perm_inverse(po);
    let mut next = 0;
    let mut raw = Raw::from_node(t, &mut next);
    raw.relabel(&|l: Label| match l.color {
        Color::Closed => Label::c(ic[l.idx as usize]),
        Color::Open => Label::o(io[l.idx as usize]),
    });
    let order: Vec<usize> = (0..next).collect();
    canonicalize(e, &raw, &order, vdeg)
}

pub fn symmetric_act(e: &Collection, x: &Element, pc: &[usize], po: &[usize]) -> Element {
    let deg = koszul_deg(e);
    let mut out = Element::zero(x.sig);
    for (t, c) in &x.terms {
        out.add_terms(act_tree(e, t, pc, po, &deg), c);
    }
    out
}

/// Replaces the vertex at depth-first position `at` by `terms` (written in that vertex's slot labels).
/// The inserted vertices take the place of the removed one in the tensor order.
pub fn substitute_at(e: &Collection, t: &Node, at: usize, terms: &[(Node, Q)], vdeg: &dyn Fn(u16) -> i64) -> Vec<(Node, Q)> {
    let mut next = 0;
    let raw = Raw::from_node(t, &mut next);
    let total = next;
    let mut out = Vec::new();
    for (s, c) in terms {
        let mut id = total;
        let ins = Raw::from_node(s, &mut id);
        let ins_count = id - total;
        let replaced = replace_raw(e, raw.clone(), at, &ins);
        let order: Vec<usize> = (0..at).chain(total..total + ins_count).chain(at + 1..total).collect();
        for (u, d) in canonicalize(e, &replaced, &order, vdeg) {
            out.push((u, &d * c));
        }
    }
    out
}

fn replace_raw(e: &Collection, raw: Raw, at: usize, ins: &Raw) -> Raw {
    match raw {
        Raw::Vert { id, gen, dec, kids } if id == at => {
            let g = e.gen(gen);
            let slots = g.slot_to_child(dec);
            let n = g.sig.n;
            let mut kids: Vec<Option<Raw>> = kids.into_iter().map(Some).collect();
            let mut by_slot: Vec<Option<Raw>> = slots.iter().map(|&k| kids[k].take()).collect();
            ins.clone().graft_leaves(&mut |l| {
                let s = match l.color {
                    Color::Closed => l.idx as usize,
                    Color::Open => n + l.idx as usize,
                };
                by_slot[s].take().expect("slot used twice")
            })
        }
        Raw::Vert { id, gen, dec, kids } => Raw::Vert { id, gen, dec, kids: kids.into_iter().map(|k| replace_raw(e, k, at, ins)).collect() },
        l => l,
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Partitions of `items` into exactly k nonempty blocks, blocks ordered by first element.
fn partitions_k(items: &[Label], k: usize) -> Vec<Vec<Vec<Label>>> {
    fn go(items: &[Label], k: usize, cur: &mut Vec<Vec<Label>>, out: &mut Vec<Vec<Vec<Label>>>) {
        if items.is_empty() {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        if cur.len() + items.len() < k {
            return;
        }
        let x = items[0];
        for b in 0..cur.len() {
            cur[b].push(x);
            go(&items[1..], k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![x]);
            go(&items[1..], k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, &mut Vec::new(), &mut out);
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Enumerates canonical trees; `special` marks generators that must occur exactly `count` times.
pub struct Enumerator<'a> {
    e: &'a Collection,
    special: Vec<bool>,
    memo: HashMap<(Color, usize, usize, usize, usize), Arc<Vec<Node>>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(e: &'a Collection) -> Enumerator<'a> {
        Enumerator { e, special: vec![false; e.gens.len()], memo: HashMap::new() }
    }
    pub fn with_special(e: &'a Collection, special: Vec<bool>) -> Enumerator<'a> {
        Enumerator { e, special, memo: HashMap::new() }
    }

    fn standard(&mut self, out: Color, n: usize, m: usize, w: usize, s: usize) -> Arc<Vec<Node>> {
        let key = (out, n, m, w, s);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let labels: Vec<Label> = (0..n).map(Label::c).chain((0..m).map(Label::o)).collect();
        let mut res = Vec::new();
        if w == 0 {
            if labels.len() == 1 && labels[0].color == out && s == 0 {
                res.push(Node::Leaf(labels[0]));
            }
        } else if !(out == Color::Closed && m > 0) {
            for gi in 0..self.e.gens.len() {
                let g = self.e.gens[gi].clone();
                if g.sig.out != out {
                    continue;
                }
                let sp = self.special[gi] as usize;
                if sp > s {
                    continue;
                }
                let k = g.sig.arity();
                if k == 0 || k > labels.len() {
                    continue;
                }
                for blocks in partitions_k(&labels, k) {
                    for closed_set in choose(k, g.sig.n) {
                        let closed_ok = closed_set.iter().all(|&b| blocks[b].iter().all(|l| l.color == Color::Closed));
                        if !closed_ok {
                            continue;
                        }
                        let open_set: Vec<usize> = (0..k).filter(|b| !closed_set.contains(b)).collect();
                        let order: Vec<usize> = closed_set.iter().chain(open_set.iter()).copied().collect();
                        let colors: Vec<Color> = (0..k).map(|j| if j < g.sig.n { Color::Closed } else { Color::Open }).collect();
                        for ws in compositions(w - 1, k) {
                            for ss in compositions(s - sp, k) {
                                let mut lists = Vec::with_capacity(k);
                                let mut empty = false;
                                for j in 0..k {
                                    let blk = &blocks[order[j]];
                                    let l = self.block_trees(colors[j], blk, ws[j], ss[j]);
                                    if l.is_empty() {
                                        empty = true;
                                        break;
                                    }
                                    lists.push(l);
                                }
                                if empty {
                                    continue;
                                }
                                for kids in cartesian(&lists) {
                                    for d in 0..g.dim() {
                                        res.push(Node::Vert(Vertex { gen: gi as u16, dec: d as u32, kids: kids.clone() }));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let arc = Arc::new(res);
        self.memo.insert(key, arc.clone());
        arc
    }

    fn block_trees(&mut self, out: Color, blk: &[Label], w: usize, s: usize) -> Vec<Node> {
        let cl: Vec<Label> = blk.iter().filter(|l| l.color == Color::Closed).copied().collect();
        let op: Vec<Label> = blk.iter().filter(|l| l.color == Color::Open).copied().collect();
        let base = self.standard(out, cl.len(), op.len(), w, s);
        base.iter()
            .map(|t| {
                t.relabel(&|l: Label| match l.color {
                    Color::Closed => cl[l.idx as usize],
                    Color::Open => op[l.idx as usize],
                })
            })
            .collect()
    }

    /// Canonical trees at `sig` with exactly `weight` vertices (and `special` marked ones).
    pub fn trees(&mut self, sig: Sig, weight: usize, special: usize) -> Vec<Node> {
        (*self.standard(sig.out, sig.n, sig.m, weight, special)).clone()
    }
}

fn choose(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

fn cartesian(lists: &[Vec<Node>]) -> Vec<Vec<Node>> {
    let mut out: Vec<Vec<Node>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for pre in &out {
            for x in l {
                let mut v = pre.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Basis of the weight-`weight` part of the free operad at `sig`.
pub fn enumerate_basis(e: &Collection, sig: Sig, weight: usize) -> Vec<Node> {
    Enumerator::new(e).trees(sig, weight, 0)
}

/// Upper bound on the weight of any tree at `sig` when unary generators cannot be stacked.
pub fn weight_bound(sig: Sig) -> usize {
    2 * sig.arity()
}

/// Indexed list of trees.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    pub trees: Vec<Node>,
    pub index: HashMap<Node, usize>,
}

impl Basis {
    pub fn new(trees: Vec<Node>) -> Basis {
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Basis { trees, index }
    }
    pub fn len(&self) -> usize {
        self.trees.len()
    }
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
    pub fn coords(&self, x: &Element) -> SVec {
        let mut m = BTreeMap::new();
        for (t, c) in &x.terms {
            let i = *self.index.get(t).unwrap_or_else(|| panic!("tree outside basis: {:?}", t));
            m.insert(i, c.clone());
        }
        svec_from_map(m)
    }
    pub fn coords_terms(&self, ts: &[(Node, Q)]) -> SVec {
        let mut m: BTreeMap<usize, Q> = BTreeMap::new();
        for (t, c) in ts {
            let i = *self.index.get(t).unwrap_or_else(|| panic!("tree outside basis: {:?}", t));
            *m.entry(i).or_insert_with(Q::zero) += c;
        }
        svec_from_map(m)
    }
    pub fn element(&self, sig: Sig, v: &SVec) -> Element {
        let mut x = Element::zero(sig);
        for (i, c) in v {
            x.add_term(self.trees[*i].clone(), c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn h0scvor() -> Collection {
        Collection::new(vec![
            Generator::new("f2", Sig::c(2), 0, Symmetry::uniform(Sym::Trivial)),
            Generator::new("e02", Sig::o(0, 2), 0, Symmetry::uniform(Sym::Regular)),
            Generator::new("e11", Sig::o(1, 1), 0, Symmetry::uniform(Sym::Regular)),
        ])
    }

    #[test]
    fn counts_of_weight_two() {
        let e = h0scvor();
        assert_eq!(enumerate_basis(&e, Sig::c(3), 2).len(), 3);
        assert_eq!(enumerate_basis(&e, Sig::o(0, 3), 2).len(), 12);
        assert_eq!(enumerate_basis(&e, Sig::o(2, 1), 2).len(), 3);
        assert_eq!(enumerate_basis(&e, Sig::o(1, 2), 2).len(), 6);
    }

    #[test]
    fn parse_print_roundtrip() {
        let e = h0scvor();
        for s in ["e02(o2,o1)", "f2(c2,c1)", "e11(c1,e02(o2,o1))", "e02(e11(c2,o1),e11(c1,o2))"] {
            let x = parse_element(&e, s).unwrap();
            let p = x.display(&e);
            assert_eq!(parse_element(&e, &p).unwrap(), x, "{}", s);
        }
        assert_eq!(parse_element(&e, "f2(c2,c1)").unwrap(), parse_element(&e, "f2(c1,c2)").unwrap());
        assert_ne!(parse_element(&e, "e02(o2,o1)").unwrap(), parse_element(&e, "e02(o1,o2)").unwrap());
        assert!(parse_element(&e, "e11(o1,c1)").is_err());
        assert!(parse_element(&e, "e02(o1,o1)").is_err());
    }

    #[test]
    fn sign_symmetric_and_koszul() {
        let e = Collection::new(vec![Generator::new("l", Sig::c(2), 1, Symmetry::uniform(Sym::Sign))]);
        let x = parse_element(&e, "l(c2,c1)").unwrap();
        let y = parse_element(&e, "l(c1,c2)").unwrap();
        assert_eq!(x, y.scaled(&Q::int(-1)));
        // two odd vertices: l(l(c1,c2),c3) and l(c3,l(c1,c2)) differ by the sign action only.
        let a = parse_element(&e, "l(l(c1,c2),c3)").unwrap();
        let b = parse_element(&e, "l(c3,l(c1,c2))").unwrap();
        assert_eq!(a, b.scaled(&Q::int(-1)));
    }

    #[test]
    fn graft_matches_parse() {
        let e = h0scvor();
        let x = parse_element(&e, "e02(o1,o2)").unwrap();
        let y = parse_element(&e, "e11(c1,o1)").unwrap();
        let g = graft(&e, &x, Label::o(1), &y);
        assert_eq!(g, parse_element(&e, "e02(o1,e11(c1,o2))").unwrap());
        let g = graft(&e, &y, Label::o(0), &x);
        assert_eq!(g, parse_element(&e, "e11(c1,e02(o1,o2))").unwrap());
        let f = parse_element(&e, "f2(c1,c2)").unwrap();
        let g = graft(&e, &y, Label::c(0), &f);
        assert_eq!(g, parse_element(&e, "e11(f2(c1,c2),o1)").unwrap());
    }

    #[test]
    fn action_is_right_action() {
        let e = h0scvor();
        let x = parse_element(&e, "e02(e02(o1,o3),o2)").unwrap();
        for s in all_perms(3) {
            for t in all_perms(3) {
                let a = symmetric_act(&e, &symmetric_act(&e, &x, &[], &s), &[], &t);
                let b = symmetric_act(&e, &x, &[], &perm_compose(&s, &t));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn substitute_identity_corolla() {
        let e = h0scvor();
        let t = parse_element(&e, "e02(o2,e11(c1,o1))").unwrap();
        let (tree, _) = t.terms.iter().next().unwrap();
        let cor = parse_element(&e, "e02(o1,o2)").unwrap();
        let ts: Vec<(Node, Q)> = cor.terms.into_iter().collect();
        let r = substitute_at(&e, tree, 0, &ts, &koszul_deg(&e));
        assert_eq!(r, vec![(tree.clone(), Q::one())]);
    }
}
