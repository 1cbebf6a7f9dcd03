use super::{enforce_caps, splice, ExtendError, ExtensionBudget, Splicer, Strategy, Stream};
use crate::coloring::{Coloring, ListAssignment, RecoloringSequence};
use crate::graph::{Graph, Vertex};

/// `⌈t/s⌉ + 1`.
pub fn key_lemma_bound(t: u32, s: u32) -> u32 {
    t.div_ceil(s) + 1
}

struct KeyLemma {
    v: Vertex,
    s: usize,
    around: Stream,
}

impl Strategy for KeyLemma {
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        let st = sp.inner[i];
        if st.color != sp.color(self.v) || !sp.g.has_edge(self.v, st.vertex) {
            return Ok(());
        }
        let mut f = sp.around(self.v);
        f.extend_from_slice(self.around.upcoming(i, self.s));
        sp.dodge(self.v, &f)
    }

    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError> {
        sp.finish(self.v)
    }
}

/// Extend a sequence on `g - v` to `g`, recoloring `v` at most `⌈t/s⌉+1`
/// times where `t` counts inner recolorings of `N(v)` and
/// `s = |L(v)| - d(v) - 1`.
pub fn extend_key_lemma(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    extend_key_lemma_budget(g, lists, v, inner, alpha, beta).map(|(seq, _)| seq)
}

/// [`extend_key_lemma`] together with the budget it was held to.
pub fn extend_key_lemma_budget(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<(RecoloringSequence, ExtensionBudget), ExtendError> {
    if !g.contains(v) {
        return Err(ExtendError::Inapplicable(format!("vertex {v} is not in the graph")));
    }
    let slack = lists.list(v).len() as i64 - g.degree(v) as i64 - 1;
    if slack <= 0 {
        return Err(ExtendError::Inapplicable(format!("vertex {v} has slack {slack}")));
    }
    let s = slack as usize;
    let around = Stream::new(&inner.steps, |u| g.has_edge(u, v));
    let budget = ExtensionBudget { t: around.len() as u32, s: s as u32, bound: key_lemma_bound(around.len() as u32, s as u32) };
    let mut strat = KeyLemma { v, s, around };
    let seq = splice(g, lists, &[v], inner, alpha, beta, &mut strat)?;
    enforce_caps(&seq, &[(v, budget.bound)])?;
    Ok((seq, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{validate_sequence, Step};
    use crate::graph::named;

    #[test]
    fn bound_arithmetic() {
        assert_eq!(key_lemma_bound(0, 3), 1);
        assert_eq!(key_lemma_bound(60, 4), 16);
        assert_eq!(key_lemma_bound(24, 3), 9);
        assert_eq!(key_lemma_bound(13, 1), 14);
    }

    #[test]
    fn untouched_neighborhood_costs_one_move() {
        let g = named::star(2);
        let lists = ListAssignment::uniform(3, 0..4);
        let alpha = Coloring::from_vec(vec![0, 1, 1]);
        let beta = Coloring::from_vec(vec![2, 1, 1]);
        let inner = RecoloringSequence::new(alpha.restrict_to(&g.without(&[0])));
        let seq = extend_key_lemma(&g, &lists, 0, &inner, &alpha, &beta).unwrap();
        assert_eq!(seq.steps, vec![Step::new(0, 2)]);
    }

    #[test]
    fn dodges_ahead_of_the_stream() {
        // leaves alternate through the center's color
        let g = named::star(2);
        let lists = ListAssignment::uniform(3, 0..4);
        let alpha = Coloring::from_vec(vec![0, 1, 2]);
        let beta = Coloring::from_vec(vec![3, 0, 1]);
        let mut inner = RecoloringSequence::new(alpha.restrict_to(&g.without(&[0])));
        inner.steps = vec![Step::new(1, 0), Step::new(2, 3), Step::new(2, 1)];
        let (seq, budget) = extend_key_lemma_budget(&g, &lists, 0, &inner, &alpha, &beta).unwrap();
        assert_eq!((budget.t, budget.s, budget.bound), (3, 1, 4));
        validate_sequence(&g, &lists, &seq, &beta, budget.bound).unwrap();
    }

    #[test]
    fn rejects_zero_slack_and_broken_contract() {
        let g = named::star(2);
        let tight = ListAssignment::uniform(3, 0..3);
        let alpha = Coloring::from_vec(vec![0, 1, 1]);
        let inner = RecoloringSequence::new(alpha.restrict_to(&g.without(&[0])));
        assert!(matches!(extend_key_lemma(&g, &tight, 0, &inner, &alpha, &alpha), Err(ExtendError::Inapplicable(_))));
        let lists = ListAssignment::uniform(3, 0..4);
        let beta = Coloring::from_vec(vec![0, 2, 1]);
        assert!(matches!(extend_key_lemma(&g, &lists, 0, &inner, &alpha, &beta), Err(ExtendError::ContractBreach(_))));
    }
}
