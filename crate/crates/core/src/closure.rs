//! Selfsufficiency, the selfsufficient closure CSS, the combinatorial
//! closure cl_k, relative predimension, minimal extensions, and the closure
//! chain.
//!
//! All semantics are relative to the finite ambient space: "every finite
//! superspace" means every subspace of F_p^n containing the argument. The
//! quantifiers are evaluated exhaustively under the guardrail.

use std::collections::{HashMap, HashSet};

use crate::enumerate::{self, Guardrail};
use crate::error::{Error, Result};
use crate::structure::{BilinearStructure, ScaledDelta};
use crate::subspace::Subspace;
use crate::vector::FpVector;

/// Per-call memo of δ, css, and selfsufficiency values.
struct Evaluator<'a> {
    s: &'a BilinearStructure,
    guard: &'a Guardrail,
    delta_memo: HashMap<Subspace, i64>,
    ss_memo: HashMap<Subspace, bool>,
    dk_memo: HashMap<Subspace, i64>,
}

impl<'a> Evaluator<'a> {
    fn new(s: &'a BilinearStructure, guard: &'a Guardrail) -> Self {
        Self {
            s,
            guard,
            delta_memo: HashMap::new(),
            ss_memo: HashMap::new(),
            dk_memo: HashMap::new(),
        }
    }

    fn delta(&mut self, h: &Subspace) -> Result<i64> {
        if let Some(&v) = self.delta_memo.get(h) {
            return Ok(v);
        }
        let v = self.s.delta(h)?.value();
        self.delta_memo.insert(h.clone(), v);
        Ok(v)
    }

    /// H is selfsufficient when no superspace has a smaller δ.
    fn is_ss(&mut self, h: &Subspace) -> Result<bool> {
        if let Some(&v) = self.ss_memo.get(h) {
            return Ok(v);
        }
        let d_h = self.delta(h)?;
        let mut verdict = true;
        for k in enumerate::superspaces(h, self.guard)? {
            if self.delta(&k)? < d_h {
                verdict = false;
                break;
            }
        }
        self.ss_memo.insert(h.clone(), verdict);
        Ok(verdict)
    }

    /// The smallest selfsufficient superspace: the minimum-dimension
    /// superspace among those minimizing δ. That minimizer is unique
    /// whenever δ is computed correctly, so non-uniqueness is reported as
    /// an internal error rather than resolved silently.
    fn css(&mut self, h: &Subspace) -> Result<Subspace> {
        let supers = enumerate::superspaces(h, self.guard)?;
        let mut min_delta = i64::MAX;
        for k in &supers {
            min_delta = min_delta.min(self.delta(k)?);
        }
        // The superspace list is in canonical (dimension-major) order.
        let mut minimizers = supers
            .iter()
            .filter(|k| self.delta_memo[*k] == min_delta);
        let first = minimizers.next().expect("h itself is a candidate").clone();
        if let Some(second) = minimizers.next() {
            if second.dim() == first.dim() {
                return Err(Error::Internal(format!(
                    "css minimizer of dimension {} is not unique for {h}",
                    first.dim()
                )));
            }
        }
        Ok(first)
    }

    /// d_k of a subspace: δ of its selfsufficient closure.
    fn dk(&mut self, h: &Subspace) -> Result<i64> {
        if let Some(&v) = self.dk_memo.get(h) {
            return Ok(v);
        }
        let c = self.css(h)?;
        let v = self.delta(&c)?;
        self.dk_memo.insert(h.clone(), v);
        Ok(v)
    }
}

/// True when no enumerated superspace of `h` has a smaller predimension.
pub fn is_selfsufficient(
    s: &BilinearStructure,
    h: &Subspace,
    guard: &Guardrail,
) -> Result<bool> {
    Evaluator::new(s, guard).is_ss(h)
}

/// The selfsufficient closure: the unique minimal selfsufficient superspace
/// of `h`.
pub fn css(s: &BilinearStructure, h: &Subspace, guard: &Guardrail) -> Result<Subspace> {
    Evaluator::new(s, guard).css(h)
}

/// The dimension function d_k(A) = δ_k(CSS(⟨A⟩)) of a finite vector set.
pub fn dk(s: &BilinearStructure, vectors: &[FpVector], guard: &Guardrail) -> Result<ScaledDelta> {
    let span = Subspace::span(s.p(), s.n(), vectors)?;
    let v = Evaluator::new(s, guard).dk(&span)?;
    Ok(ScaledDelta::new(v, s.k()))
}

/// Whether A ⊆ cl_k(B): adjoining A leaves d_k unchanged.
pub fn in_closure(
    s: &BilinearStructure,
    a: &[FpVector],
    b: &[FpVector],
    guard: &Guardrail,
) -> Result<bool> {
    let span_b = Subspace::span(s.p(), s.n(), b)?;
    let union: Vec<FpVector> = b.iter().chain(a).cloned().collect();
    let span_ab = Subspace::span(s.p(), s.n(), &union)?;
    let mut ev = Evaluator::new(s, guard);
    Ok(ev.dk(&span_b)? == ev.dk(&span_ab)?)
}

/// The closure set cl_k(B) with its subspace verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    /// All ambient vectors in the closure, in enumeration order.
    pub members: Vec<FpVector>,
    /// The closure as a subspace, when it is closed under addition and
    /// scalar multiples. Checked, not assumed.
    pub subspace: Option<Subspace>,
}

impl ClosureSet {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_subspace(&self) -> bool {
        self.subspace.is_some()
    }
}

/// Scans every ambient vector a and keeps those with {a} ⊆ cl_k(B).
pub fn closure_set(
    s: &BilinearStructure,
    b: &Subspace,
    guard: &Guardrail,
) -> Result<ClosureSet> {
    if b.p() != s.p() || b.ambient_dim() != s.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            got: b.ambient_dim(),
        });
    }
    let mut ev = Evaluator::new(s, guard);
    let d_base = ev.dk(b)?;
    let mut members = Vec::new();
    for a in enumerate::vectors(s.p(), s.n(), guard)? {
        let line = Subspace::span(s.p(), s.n(), std::slice::from_ref(&a))?;
        let join = b.sum(&line)?;
        if ev.dk(&join)? == d_base {
            members.push(a);
        }
    }
    // The closure is a subspace exactly when it coincides with its span.
    let span = Subspace::span(s.p(), s.n(), &members)?;
    let span_size = (s.p() as u128).pow(span.dim() as u32);
    let subspace = (span_size == members.len() as u128).then_some(span);
    Ok(ClosureSet { members, subspace })
}

/// The relative predimension δ_k(K/H) for selfsufficient H.
///
/// Evaluates the defining minimum over all K₁ with K₁ + H = K + H and
/// selfsufficient K₁ ∩ H, and the closed form δ_k(K+H) - δ_k(H). The two
/// must agree; a disagreement is reported as an error, never resolved
/// silently.
pub fn delta_rel(
    s: &BilinearStructure,
    k_space: &Subspace,
    h: &Subspace,
    guard: &Guardrail,
) -> Result<ScaledDelta> {
    let mut ev = Evaluator::new(s, guard);
    if !ev.is_ss(h)? {
        return Err(Error::NotSelfsufficient);
    }
    let target = k_space.sum(h)?;
    guard.check(enumerate::subspace_count(s.p(), s.n()))?;
    let mut min_value: Option<i64> = None;
    for k1 in enumerate::subspaces(s.p(), s.n(), guard)? {
        if k1.sum(h)? != target {
            continue;
        }
        let inter = k1.intersect(h)?;
        if !ev.is_ss(&inter)? {
            continue;
        }
        let v = ev.delta(&k1)? - ev.delta(&inter)?;
        min_value = Some(min_value.map_or(v, |m| m.min(v)));
    }
    let min_value =
        min_value.expect("K + H itself satisfies the side conditions");
    let closed = ev.delta(&target)? - ev.delta(h)?;
    if min_value != closed {
        return Err(Error::DeltaRelDisagreement {
            min_scaled: min_value,
            closed_scaled: closed,
        });
    }
    Ok(ScaledDelta::new(closed, s.k()))
}

/// All minimal extensions of a selfsufficient subspace, in canonical order.
///
/// A minimal extension is a selfsufficient superspace K ⊋ H with
/// δ_k(K/H) = 0 whose strictly intermediate subspaces all have strictly
/// positive relative predimension. For superspaces the relative
/// predimension is the δ difference, so the scan compares δ values
/// directly.
pub fn minimal_extensions(
    s: &BilinearStructure,
    h: &Subspace,
    guard: &Guardrail,
) -> Result<Vec<Subspace>> {
    let mut ev = Evaluator::new(s, guard);
    if !ev.is_ss(h)? {
        return Err(Error::NotSelfsufficient);
    }
    let d_h = ev.delta(h)?;
    let supers = enumerate::superspaces(h, guard)?;
    let mut out = Vec::new();
    'candidates: for k in &supers {
        if k == h || ev.delta(k)? != d_h || !ev.is_ss(k)? {
            continue;
        }
        for l in &supers {
            if l != h && l != k && k.contains_subspace(l)? && ev.delta(l)? <= d_h {
                continue 'candidates;
            }
        }
        out.push(k.clone());
    }
    Ok(out)
}

/// One step of the closure chain: the subspace reached and the minimal
/// extensions found there (empty at the final step).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub space: Subspace,
    pub extensions: Vec<Subspace>,
}

/// The full closure computation for a selfsufficient subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub input: Subspace,
    pub css: Subspace,
    pub dk: ScaledDelta,
    pub closure: ClosureSet,
    pub chain: Vec<ChainStep>,
}

/// Iterates H_{i+1} = H_i + (all minimal extensions of H_i inside the
/// closure of H) until no extension remains. Each chain member must stay
/// selfsufficient with δ equal to d_k(H), and the final member must carry
/// exactly the closure set; violations are internal errors.
pub fn closure_chain(
    s: &BilinearStructure,
    h: &Subspace,
    guard: &Guardrail,
) -> Result<ClosureReport> {
    let mut ev = Evaluator::new(s, guard);
    if !ev.is_ss(h)? {
        return Err(Error::NotSelfsufficient);
    }
    let css_h = ev.css(h)?;
    let d_h = ev.delta(h)?;
    let closure = closure_set(s, h, guard)?;
    let member_set: HashSet<&FpVector> = closure.members.iter().collect();

    let mut chain = Vec::new();
    let mut cur = h.clone();
    loop {
        let mut extensions = Vec::new();
        for k in minimal_extensions(s, &cur, guard)? {
            let inside = k.elements().iter().all(|v| member_set.contains(v));
            if inside {
                extensions.push(k);
            }
        }
        if extensions.is_empty() {
            chain.push(ChainStep {
                space: cur,
                extensions,
            });
            break;
        }
        let mut next = cur.clone();
        for k in &extensions {
            next = next.sum(k)?;
        }
        chain.push(ChainStep {
            space: cur,
            extensions,
        });
        if !ev.is_ss(&next)? || ev.delta(&next)? != d_h {
            return Err(Error::Internal(format!(
                "chain member {next} lost selfsufficiency or predimension"
            )));
        }
        cur = next;
    }

    let final_space = &chain.last().expect("chain is nonempty").space;
    let final_set: HashSet<FpVector> = final_space.elements().into_iter().collect();
    if final_set.len() != closure.members.len()
        || !closure.members.iter().all(|v| final_set.contains(v))
    {
        return Err(Error::Internal(
            "final chain member differs from the closure set".into(),
        ));
    }

    Ok(ClosureReport {
        input: h.clone(),
        css: css_h,
        dk: ScaledDelta::new(d_h, s.k()),
        closure,
        chain,
    })
}

impl ClosureReport {
    /// Deterministic plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input: {}\n", self.input));
        out.push_str(&format!("css: {}\n", self.css));
        out.push_str(&format!(
            "d_k: {} (scaled), {} (rational, k={})\n",
            self.dk.value(),
            self.dk.rational(),
            self.dk.k()
        ));
        match &self.closure.subspace {
            Some(sub) => out.push_str(&format!(
                "closure: {} vectors, subspace of dim {}: {}\n",
                self.closure.size(),
                sub.dim(),
                sub
            )),
            None => out.push_str(&format!(
                "closure: {} vectors, not a subspace\n",
                self.closure.size()
            )),
        }
        out.push_str("chain:\n");
        for (i, step) in self.chain.iter().enumerate() {
            out.push_str(&format!("  step {i}: {}\n", step.space));
            for ext in &step.extensions {
                out.push_str(&format!("    minimal extension: {ext}\n"));
            }
        }
        out
    }

    /// Line-oriented key-value rendering.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input {}\n", self.input));
        out.push_str(&format!("css {}\n", self.css));
        out.push_str(&format!("dk_scaled {}\n", self.dk.value()));
        out.push_str(&format!("dk_k {}\n", self.dk.k()));
        out.push_str(&format!("dk_rational {}\n", self.dk.rational()));
        out.push_str(&format!("closure_size {}\n", self.closure.size()));
        out.push_str(&format!(
            "closure_is_subspace {}\n",
            self.closure.is_subspace()
        ));
        if let Some(sub) = &self.closure.subspace {
            out.push_str(&format!("closure_dim {}\n", sub.dim()));
            out.push_str(&format!("closure_subspace {sub}\n"));
        }
        out.push_str(&format!("chain_len {}\n", self.chain.len()));
        for (i, step) in self.chain.iter().enumerate() {
            out.push_str(&format!("chain_{i} {}\n", step.space));
            for (j, ext) in step.extensions.iter().enumerate() {
                out.push_str(&format!("chain_{i}_ext_{j} {ext}\n"));
            }
        }
        out
    }
}
