use super::{ElementSubset, FiniteGroup};
use crate::error::{Error, Result};

pub const ISOMORPHISM_ORDER_LIMIT: usize = 64;

/// Decides whether two groups are isomorphic.
///
/// Picks a small generating set of `g`, then backtracks over images of
/// each generator among elements of `h` with the same order. Each partial
/// assignment is extended to the subgroup it generates and rejected as
/// soon as the extension is inconsistent or not injective.
pub fn groups_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    for grp in [g, h] {
        if grp.order() > ISOMORPHISM_ORDER_LIMIT {
            return Err(Error::Capability {
                what: format!("isomorphism test on {}", grp),
                limit: ISOMORPHISM_ORDER_LIMIT,
            });
        }
    }
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(false);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(false);
    }
    let gens = generating_set(g);
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &h_orders, &mut images))
}

/// Greedy generating set, preferring elements of large order.
fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[g.identity()] = true;
    for x in by_order {
        if span[x] {
            continue;
        }
        gens.push(x);
        let sub = super::closure(
            g,
            &ElementSubset::from_sorted({
                let mut v = gens.clone();
                v.sort_unstable();
                v
            }),
        );
        span = sub.mask(g.order());
        if sub.len() == g.order() {
            break;
        }
    }
    gens
}

/// Extends `gens[i] ↦ images[i]` over `⟨gens⟩` by right multiplication.
/// Returns `None` on a conflict or a collision.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == UNSET {
                if used[img] {
                    return None;
                }
                used[img] = true;
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return extend(g, h, gens, images).is_some_and(|map| map.iter().all(|&m| m != usize::MAX));
    }
    let want = g.element_order(gens[depth]);
    for cand in h.elements() {
        if h_orders[cand] != want || images.contains(&cand) {
            continue;
        }
        images.push(cand);
        let ok =
            extend(g, h, &gens[..=depth], images).is_some() && search(g, h, gens, h_orders, images);
        images.pop();
        if ok {
            return true;
        }
    }
    false
}
