//! Higher-order term graphs: carriers with explicit scope sets, or with
//! abstraction-prefix functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{Label, Signature, TermGraph, Vertex};
use crate::morphism::{check_homomorphism, find_homomorphism, VertexMap};
use crate::scope::{verify_prefix_sig_i, PrefixFn, Violation};

/// Scope of every abstraction vertex.
pub type ScopeFn = BTreeMap<Vertex, BTreeSet<Vertex>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HoCondition {
    /// Scopes must be given for exactly the abstraction vertices.
    Domain,
    Root,
    SelfScope,
    Nest,
    Closed,
    Scope0,
    Scope1,
}

impl HoCondition {
    pub fn name(self) -> &'static str {
        match self {
            HoCondition::Domain => "(domain)",
            HoCondition::Root => "(root)",
            HoCondition::SelfScope => "(self)",
            HoCondition::Nest => "(nest)",
            HoCondition::Closed => "(closed)",
            HoCondition::Scope0 => "(scope)_0",
            HoCondition::Scope1 => "(scope)_1",
        }
    }
}

impl fmt::Display for HoCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoViolation {
    pub condition: HoCondition,
    pub vertex: Vertex,
}

impl HoViolation {
    pub fn describe(&self, g: &TermGraph) -> String {
        format!("{} violated at `{}`", self.condition, g.name(self.vertex))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoError {
    #[error("higher-order term graphs need signature l0 or l1, got {0}")]
    UnsupportedSignature(Signature),
    #[error("invalid scope function: {} at {}", .0.condition, .0.vertex)]
    InvalidScopes(HoViolation),
    #[error("invalid prefix function: {} at {}", .0.condition, .0.vertex)]
    InvalidPrefixes(Violation),
}

fn check_carrier(g: &TermGraph) -> Result<(), HoError> {
    match g.signature() {
        Signature::L0 | Signature::L1 => Ok(()),
        s => Err(HoError::UnsupportedSignature(s)),
    }
}

fn minus(sc: &BTreeSet<Vertex>, v: Vertex) -> impl Iterator<Item = &Vertex> {
    sc.iter().filter(move |&&x| x != v)
}

/// Checks the scope conditions in their listing order.
pub fn validate_ho_diag(g: &TermGraph, sc: &ScopeFn) -> Result<(), HoViolation> {
    let err = |condition, vertex| Err(HoViolation { condition, vertex });
    let lams: Vec<Vertex> = g.vertices().filter(|&v| g.label(v) == Label::Lam).collect();
    for &v in &lams {
        if !sc.contains_key(&v) {
            return err(HoCondition::Domain, v);
        }
    }
    for (&v, set) in sc {
        if v.index() >= g.len() || g.label(v) != Label::Lam {
            return err(HoCondition::Domain, v);
        }
        if set.iter().any(|x| x.index() >= g.len()) {
            return err(HoCondition::Domain, v);
        }
    }
    let r = g.root();
    for (&v, set) in sc {
        if v != r && set.contains(&r) {
            return err(HoCondition::Root, v);
        }
    }
    for (&v, set) in sc {
        if !set.contains(&v) {
            return err(HoCondition::SelfScope, v);
        }
    }
    for (&v0, set0) in sc {
        for &v1 in minus(set0, v0) {
            if let Some(set1) = sc.get(&v1) {
                if set1.iter().any(|x| *x == v0 || !set0.contains(x)) {
                    return err(HoCondition::Nest, v1);
                }
            }
        }
    }
    for (&v, set) in sc {
        for (w, _, b) in g.edges() {
            if b != v && set.contains(&b) && !set.contains(&w) {
                return err(HoCondition::Closed, w);
            }
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Var) {
        if !sc.iter().any(|(&v, set)| v != w && set.contains(&w)) {
            return err(HoCondition::Scope0, w);
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Var) {
        if let Some(&b) = g.args(w).first() {
            if g.label(b) != Label::Lam {
                return err(HoCondition::Scope1, w);
            }
            if sc.values().any(|set| set.contains(&w) != set.contains(&b)) {
                return err(HoCondition::Scope1, w);
            }
        }
    }
    Ok(())
}

pub fn validate_ho(g: &TermGraph, sc: &ScopeFn) -> bool {
    check_carrier(g).is_ok() && validate_ho_diag(g, sc).is_ok()
}

pub fn validate_ap_ho_diag(g: &TermGraph, p: &PrefixFn) -> Result<(), Violation> {
    verify_prefix_sig_i(g, p)
}

pub fn validate_ap_ho(g: &TermGraph, p: &PrefixFn) -> bool {
    check_carrier(g).is_ok() && p.len() == g.len() && validate_ap_ho_diag(g, p).is_ok()
}

/// A carrier graph with a valid scope function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoTermGraph {
    carrier: TermGraph,
    scopes: ScopeFn,
}

impl HoTermGraph {
    pub fn new(carrier: TermGraph, scopes: ScopeFn) -> Result<Self, HoError> {
        check_carrier(&carrier)?;
        validate_ho_diag(&carrier, &scopes).map_err(HoError::InvalidScopes)?;
        Ok(HoTermGraph { carrier, scopes })
    }

    pub fn carrier(&self) -> &TermGraph {
        &self.carrier
    }

    pub fn scopes(&self) -> &ScopeFn {
        &self.scopes
    }

    pub fn scope(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.scopes[&v]
    }

    /// Abstraction vertices having `w` in scope, outermost first. Scopes
    /// containing a common vertex are nested, so ordering by size suffices.
    pub fn binders(&self, w: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .scopes
            .iter()
            .filter(|(_, set)| set.contains(&w))
            .map(|(&v, _)| v)
            .collect();
        out.sort_by_key(|v| std::cmp::Reverse(self.scopes[v].len()));
        out
    }

    /// The same structure transported along a bijection onto `carrier`.
    pub fn transport(&self, h: &VertexMap, carrier: TermGraph) -> HoTermGraph {
        let scopes = self
            .scopes
            .iter()
            .map(|(&v, set)| (h.apply(v), set.iter().map(|&x| h.apply(x)).collect()))
            .collect();
        HoTermGraph { carrier, scopes }
    }
}

/// A carrier graph with a correct abstraction-prefix function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApHoTermGraph {
    carrier: TermGraph,
    prefix: PrefixFn,
}

impl ApHoTermGraph {
    pub fn new(carrier: TermGraph, prefix: PrefixFn) -> Result<Self, HoError> {
        check_carrier(&carrier)?;
        validate_ap_ho_diag(&carrier, &prefix).map_err(HoError::InvalidPrefixes)?;
        Ok(ApHoTermGraph { carrier, prefix })
    }

    pub fn carrier(&self) -> &TermGraph {
        &self.carrier
    }

    pub fn prefix(&self) -> &PrefixFn {
        &self.prefix
    }
}

fn image_set(h: &VertexMap, set: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    set.iter().map(|&x| h.apply(x)).collect()
}

pub fn check_ho_homomorphism(h: &VertexMap, src: &HoTermGraph, dst: &HoTermGraph) -> bool {
    check_homomorphism(&src.carrier, &dst.carrier, h)
        && src
            .scopes
            .iter()
            .all(|(&v, set)| dst.scopes.get(&h.apply(v)) == Some(&image_set(h, set)))
}

pub fn check_ap_homomorphism(h: &VertexMap, src: &ApHoTermGraph, dst: &ApHoTermGraph) -> bool {
    check_homomorphism(&src.carrier, &dst.carrier, h)
        && src
            .carrier
            .vertices()
            .all(|w| h.apply_word(src.prefix.get(w)) == dst.prefix.get(h.apply(w)))
}

/// The carrier homomorphism, if it also respects scopes.
pub fn find_ho_homomorphism(src: &HoTermGraph, dst: &HoTermGraph) -> Option<VertexMap> {
    find_homomorphism(&src.carrier, &dst.carrier).filter(|h| check_ho_homomorphism(h, src, dst))
}

pub fn find_ap_homomorphism(src: &ApHoTermGraph, dst: &ApHoTermGraph) -> Option<VertexMap> {
    find_homomorphism(&src.carrier, &dst.carrier).filter(|h| check_ap_homomorphism(h, src, dst))
}

pub fn ho_isomorphic(a: &HoTermGraph, b: &HoTermGraph) -> Option<VertexMap> {
    if a.carrier.len() != b.carrier.len() {
        return None;
    }
    find_ho_homomorphism(a, b).filter(|h| h.is_injective())
}

pub fn ap_isomorphic(a: &ApHoTermGraph, b: &ApHoTermGraph) -> Option<VertexMap> {
    if a.carrier.len() != b.carrier.len() {
        return None;
    }
    find_ap_homomorphism(a, b).filter(|h| h.is_injective())
}
