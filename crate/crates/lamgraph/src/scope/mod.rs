//! Abstraction-prefix inference and the scoping predicates on first-order
//! λ-term-graphs.

mod eager;
mod infer;
mod prefix;

use thiserror::Error;

use crate::graph::{Signature, TermGraph};

pub use eager::{
    is_eager_scope_pumped, is_eager_scope_with, is_fully_backlinked_pumped, is_fully_backlinked_with,
};
pub use infer::{
    infer_prefix, infer_prefix_diag, infer_prefix_sig_i, infer_prefix_sig_i_diag, infer_relaxed_prefix,
    infer_relaxed_prefix_diag, skip_delimiters, verify_prefix, verify_prefix_sig_i, verify_relaxed,
};
pub use prefix::{check_prefix_homomorphic_image, Condition, PrefixFn, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("operation not defined over signature {0}")]
    UnsupportedSignature(Signature),
    #[error("not a λ-term-graph: {}", .0.condition)]
    NotALambdaTG(Violation),
}

/// The correct prefix function of a λ-term-graph: unique over delimiter
/// signatures, pointwise-longest over `l1`.
pub fn lambda_prefix(g: &TermGraph) -> Result<PrefixFn, ScopeError> {
    match g.signature() {
        Signature::L | Signature::L0 => Err(ScopeError::UnsupportedSignature(g.signature())),
        Signature::L1 => infer_prefix_sig_i_diag(g).map_err(ScopeError::NotALambdaTG),
        _ => infer_prefix_diag(g).map_err(ScopeError::NotALambdaTG),
    }
}

pub fn is_lambda_tg(g: &TermGraph) -> Result<bool, ScopeError> {
    match lambda_prefix(g) {
        Ok(_) => Ok(true),
        Err(ScopeError::NotALambdaTG(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn delimiter_prefix(g: &TermGraph) -> Result<PrefixFn, ScopeError> {
    if !g.signature().has_delimiters() {
        return Err(ScopeError::UnsupportedSignature(g.signature()));
    }
    infer_prefix_diag(g).map_err(ScopeError::NotALambdaTG)
}

pub fn is_eager_scope(g: &TermGraph) -> Result<bool, ScopeError> {
    Ok(is_eager_scope_with(g, &delimiter_prefix(g)?))
}

pub fn is_fully_backlinked(g: &TermGraph) -> Result<bool, ScopeError> {
    Ok(is_fully_backlinked_with(g, &delimiter_prefix(g)?))
}

pub fn is_lambda_tg_up_to_s(g: &TermGraph) -> Result<bool, ScopeError> {
    if !g.signature().has_delimiters() {
        return Err(ScopeError::UnsupportedSignature(g.signature()));
    }
    Ok(infer_relaxed_prefix(g).is_some())
}

/// Everything the scope checker can say about one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScopeClassification {
    pub sig: Signature,
    pub is_ltg: bool,
    pub is_eager: bool,
    pub is_fbl: bool,
    pub is_ltg_up_to_s: bool,
    /// The correct prefix function, or the relaxed one when the graph is a
    /// λ-term-graph only up to delimiter sharing.
    pub prefix: Option<PrefixFn>,
    pub first_violation: Option<Violation>,
}

/// Eagerness and back-linking are only decided over delimiter signatures;
/// over `l1` they are reported false. Over `l` and `l0` every flag is false.
pub fn classify(g: &TermGraph) -> ScopeClassification {
    let sig = g.signature();
    let mut c = ScopeClassification {
        sig,
        is_ltg: false,
        is_eager: false,
        is_fbl: false,
        is_ltg_up_to_s: false,
        prefix: None,
        first_violation: None,
    };
    match sig {
        Signature::L | Signature::L0 => {}
        Signature::L1 => match infer_prefix_sig_i_diag(g) {
            Ok(p) => {
                c.is_ltg = true;
                c.is_ltg_up_to_s = true;
                c.prefix = Some(p);
            }
            Err(v) => c.first_violation = Some(v),
        },
        _ => match infer_prefix_diag(g) {
            Ok(p) => {
                c.is_ltg = true;
                c.is_ltg_up_to_s = true;
                c.is_eager = is_eager_scope_with(g, &p);
                c.is_fbl = is_fully_backlinked_with(g, &p);
                c.prefix = Some(p);
            }
            Err(v) => {
                c.first_violation = Some(v);
                if let Some(p) = infer_relaxed_prefix(g) {
                    c.is_ltg_up_to_s = true;
                    c.prefix = Some(p);
                }
            }
        },
    }
    c
}
