use super::perm::{all_permutations, Permutation};
use super::{ElementSubset, FiniteGroup, Structure, MAX_ORDER};
use crate::error::{Error, Result};

/// Largest degree for `S_n` / `A_n`; `7! = 5040` is the table ceiling.
pub const MAX_PERMUTATION_DEGREE: usize = 7;

fn power_label(symbol: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{k}"),
    }
}

fn check_order(what: &str, order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Capability {
            what: format!("{what} of order {order}"),
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

/// `C_n = {e, g, g^2, ...}` with `g^i · g^j = g^(i+j mod n)`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
    }
    check_order("cyclic group", n)?;
    let labels = (0..n).map(|k| power_label("g", k)).collect();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(((i + j) % n) as u16);
        }
    }
    FiniteGroup::assemble(format!("C{n}"), labels, table, Structure::Cyclic { n })
}

/// Dihedral group of order `2n`, rotation `s` of order `n` and reflection `t`.
///
/// Index `i < n` is `s^i`, index `n + i` is `t s^i`. Labels use ASCII `s`
/// and `t`; the parser also accepts `σ` and `τ`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "dihedral group needs n >= 1".into(),
        ));
    }
    check_order("dihedral group", 2 * n)?;
    let mut labels: Vec<String> = (0..n).map(|i| power_label("s", i)).collect();
    labels.extend((0..n).map(|i| match i {
        0 => "t".to_string(),
        1 => "ts".to_string(),
        _ => format!("ts^{i}"),
    }));
    let decode = |x: usize| (x / n, x % n);
    let mut table = Vec::with_capacity(4 * n * n);
    for x in 0..2 * n {
        let (a, i) = decode(x);
        for y in 0..2 * n {
            let (b, j) = decode(y);
            // s^i t = t s^-i
            let rot = if b == 1 { (n - i) % n } else { i };
            table.push(((a ^ b) * n + (rot + j) % n) as u16);
        }
    }
    FiniteGroup::assemble(format!("D{n}"), labels, table, Structure::Dihedral { n })
}

fn lex_rank(images: &[u8]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn permutation_group(degree: usize, even_only: bool) -> Result<FiniteGroup> {
    let which = if even_only {
        "alternating"
    } else {
        "symmetric"
    };
    if degree == 0 || degree > MAX_PERMUTATION_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "{which} group degree must be in 1..={MAX_PERMUTATION_DEGREE}, got {degree}"
        )));
    }
    let all = all_permutations(degree);
    let elements: Vec<Permutation> = all
        .into_iter()
        .filter(|p| !even_only || p.is_even())
        .collect();
    // lexicographic rank of a permutation of `degree` points -> element index
    let mut slot = vec![usize::MAX; (1..=degree).product()];
    for (idx, p) in elements.iter().enumerate() {
        let images: Vec<u8> = (0..degree).map(|x| p.apply(x) as u8).collect();
        slot[lex_rank(&images)] = idx;
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    let mut buf = [0u8; MAX_PERMUTATION_DEGREE];
    for p in &elements {
        for q in &elements {
            for (x, b) in buf.iter_mut().enumerate().take(degree) {
                *b = p.apply(q.apply(x)) as u8;
            }
            table.push(slot[lex_rank(&buf[..degree])] as u16);
        }
    }
    let labels = elements.iter().map(Permutation::cycle_label).collect();
    let (name, structure) = if even_only {
        (format!("A{degree}"), Structure::Alternating { degree })
    } else {
        (format!("S{degree}"), Structure::Symmetric { degree })
    };
    FiniteGroup::assemble(name, labels, table, structure)
}

/// `S_n` as permutations of `{1..n}` in cycle notation, right factor applied first.
pub fn make_symmetric(n: usize) -> Result<FiniteGroup> {
    permutation_group(n, false)
}

/// `A_n`, the even permutations of `{1..n}`.
pub fn make_alternating(n: usize) -> Result<FiniteGroup> {
    permutation_group(n, true)
}

/// `G × H` with index `a * |H| + b` and labels `(a,b)`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (n, m) = (g.order(), h.order());
    check_order("direct product", n * m)?;
    let labels = pair_labels(g, h);
    let mut table = Vec::with_capacity(n * n * m * m);
    for a in 0..n * m {
        for b in 0..n * m {
            let x = g.mul(a / m, b / m);
            let y = h.mul(a % m, b % m);
            table.push((x * m + y) as u16);
        }
    }
    FiniteGroup::assemble(
        format!("{}x{}", g.name(), h.name()),
        labels,
        table,
        Structure::Direct(Box::new(g.clone()), Box::new(h.clone())),
    )
}

fn pair_labels(g: &FiniteGroup, h: &FiniteGroup) -> Vec<String> {
    g.labels()
        .iter()
        .flat_map(|a| h.labels().iter().map(move |b| format!("({a},{b})")))
        .collect()
}

/// Action of `K` on `H` by automorphisms: `images[k][h]` is `k` applied to `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    images: Vec<Vec<usize>>,
}

impl Action {
    pub fn new(images: Vec<Vec<usize>>) -> Self {
        Action { images }
    }

    pub fn trivial(normal: &FiniteGroup, complement: &FiniteGroup) -> Self {
        Action {
            images: vec![normal.elements().collect(); complement.order()],
        }
    }

    pub fn image(&self, k: usize, h: usize) -> usize {
        self.images[k][h]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    fn validate(&self, normal: &FiniteGroup, complement: &FiniteGroup) -> Result<()> {
        let fail = |axiom: String| Err(Error::InvalidAction { axiom });
        let n = normal.order();
        if self.images.len() != complement.order() || self.images.iter().any(|r| r.len() != n) {
            return fail(format!(
                "shape: need one image list of length {n} per element of {}",
                complement.name()
            ));
        }
        for (k, row) in self.images.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return fail(format!(
                        "bijection: action of `{}` is not a permutation",
                        complement.label(k)
                    ));
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if row[normal.mul(a, b)] != normal.mul(row[a], row[b]) {
                        return fail(format!(
                            "automorphism: action of `{}` does not preserve products",
                            complement.label(k)
                        ));
                    }
                }
            }
        }
        let e = complement.identity();
        if (0..n).any(|h| self.images[e][h] != h) {
            return fail("identity: the identity of the complement must act trivially".into());
        }
        for k1 in 0..complement.order() {
            for k2 in 0..complement.order() {
                let k12 = complement.mul(k1, k2);
                if (0..n).any(|h| self.images[k12][h] != self.images[k1][self.images[k2][h]]) {
                    return fail(format!(
                        "homomorphism: action of `{}` differs from `{}` after `{}`",
                        complement.label(k12),
                        complement.label(k1),
                        complement.label(k2)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// `H ⋊ K` with `(h1,k1)·(h2,k2) = (h1·act(k1)(h2), k1·k2)`.
///
/// The result carries a [`Retraction`](super::Retraction) onto `K`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    complement: &FiniteGroup,
    action: &Action,
) -> Result<FiniteGroup> {
    action.validate(normal, complement)?;
    let (n, m) = (normal.order(), complement.order());
    check_order("semidirect product", n * m)?;
    let mut table = Vec::with_capacity(n * n * m * m);
    for x in 0..n * m {
        let (h1, k1) = (x / m, x % m);
        for y in 0..n * m {
            let (h2, k2) = (y / m, y % m);
            let h = normal.mul(h1, action.image(k1, h2));
            table.push((h * m + complement.mul(k1, k2)) as u16);
        }
    }
    FiniteGroup::assemble(
        format!("{}x|{}", normal.name(), complement.name()),
        pair_labels(normal, complement),
        table,
        Structure::Semidirect {
            normal: Box::new(normal.clone()),
            complement: Box::new(complement.clone()),
        },
    )
}

/// `G/N` with cosets ordered by their smallest element, plus the projection.
///
/// Coset labels are `[x]` for the smallest member `x`.
pub fn quotient(g: &FiniteGroup, normal: &ElementSubset) -> Result<(FiniteGroup, Vec<usize>)> {
    if !normal.is_subgroup(g) {
        return Err(Error::NotSubgroup(format!(
            "{} is not a subgroup of {}",
            normal.display(g),
            g.name()
        )));
    }
    let is_normal = g
        .elements()
        .all(|x| normal.iter().all(|h| normal.contains(g.conjugate(h, x))));
    if !is_normal {
        return Err(Error::NotNormal(format!(
            "{} is not normal in {}",
            normal.display(g),
            g.name()
        )));
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for h in normal.iter() {
            projection[g.mul(x, h)] = id;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(projection[g.mul(a, b)] as u16);
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.label(r))).collect();
    let group = FiniteGroup::assemble(
        format!("{}/N", g.name()),
        labels,
        table,
        Structure::Quotient,
    )?;
    Ok((group, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        let c7 = make_cyclic(7).unwrap();
        assert_eq!(c7.order(), 7);
        assert!((1..7).all(|a| c7.element_order(a) == 7));
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.label(0), "e");
        let c6 = make_cyclic(6).unwrap();
        assert_eq!(c6.element_order(c6.index_of("g^2").unwrap()), 3);
        assert_eq!(c6.element_order(c6.index_of("g^3").unwrap()), 2);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let d6 = make_dihedral(6).unwrap();
        assert_eq!(d6.order(), 12);
        let ts5 = d6.index_of("ts^5").unwrap();
        assert_eq!(d6.mul(ts5, ts5), d6.identity());
        let d10 = make_dihedral(10).unwrap();
        let (s, t) = (d10.index_of("s").unwrap(), d10.index_of("t").unwrap());
        assert_eq!(d10.mul(s, t), d10.index_of("ts^9").unwrap());
        assert_eq!(d10.element_order(s), 10);
        let d1 = make_dihedral(1).unwrap();
        assert_eq!(d1.order(), 2);
        assert_eq!(d1.order_profile(), vec![1, 2]);
        assert!(make_dihedral(0).is_err());
    }

    #[test]
    fn permutation_groups() {
        let a4 = make_alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.index_of("(243)").is_some());
        assert!(a4.index_of("(12)(34)").is_some());
        assert_eq!(make_symmetric(1).unwrap().order(), 1);
        let a5 = make_alternating(5).unwrap();
        assert_eq!(a5.order(), 60);
        let c = a5.index_of("(235)").unwrap();
        assert_eq!(a5.mul(a5.mul(c, c), c), a5.identity());
        assert!(make_symmetric(0).is_err());
        assert!(make_symmetric(8).is_err());
        a5.validate().unwrap();
    }

    #[test]
    fn symmetric_seven_fits_the_table_ceiling() {
        let s7 = make_symmetric(7).unwrap();
        assert_eq!(s7.order(), 5040);
        let p = s7.index_of("(1234567)").unwrap();
        assert_eq!(s7.element_order(p), 7);
    }

    #[test]
    fn klein_four_from_product() {
        let c2 = make_cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!((0..4)
            .filter(|&a| a != v.identity())
            .all(|a| v.element_order(a) == 2));
        assert_eq!(v.label(3), "(g,g)");
    }

    #[test]
    fn product_with_trivial_group_keeps_table() {
        let d3 = make_dihedral(3).unwrap();
        let p = direct_product(&d3, &make_cyclic(1).unwrap()).unwrap();
        assert_eq!(p.table_rows(), d3.table_rows());
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct() {
        let h = make_cyclic(3).unwrap();
        let k = make_dihedral(2).unwrap();
        let sd = semidirect_product(&h, &k, &Action::trivial(&h, &k)).unwrap();
        let dp = direct_product(&h, &k).unwrap();
        assert_eq!(sd.table_rows(), dp.table_rows());
        assert_eq!(sd.labels(), dp.labels());
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let h = make_cyclic(5).unwrap();
        let k = make_cyclic(2).unwrap();
        // doubling is an automorphism of C5 but has order 4, so no C2 action
        let doubling: Vec<usize> = (0..5).map(|x| (2 * x) % 5).collect();
        let err =
            semidirect_product(&h, &k, &Action::new(vec![(0..5).collect(), doubling])).unwrap_err();
        assert!(
            matches!(&err, Error::InvalidAction { axiom } if axiom.starts_with("homomorphism"))
        );
        let not_auto: Vec<usize> = vec![0, 2, 1, 3, 4];
        let err =
            semidirect_product(&h, &k, &Action::new(vec![(0..5).collect(), not_auto])).unwrap_err();
        assert!(
            matches!(&err, Error::InvalidAction { axiom } if axiom.starts_with("automorphism"))
        );
        let swap_id: Vec<usize> = (0..5).map(|x| (5 - x) % 5).collect();
        let err =
            semidirect_product(&h, &k, &Action::new(vec![swap_id.clone(), swap_id])).unwrap_err();
        assert!(matches!(&err, Error::InvalidAction { axiom } if axiom.starts_with("identity")));
        let err = semidirect_product(&h, &k, &Action::new(vec![(0..5).collect()])).unwrap_err();
        assert!(matches!(&err, Error::InvalidAction { axiom } if axiom.starts_with("shape")));
    }

    #[test]
    fn quotient_errors_distinguish_failures() {
        let d3 = make_dihedral(3).unwrap();
        let t = d3.index_of("t").unwrap();
        let not_sub = ElementSubset::new(&d3, [t]).unwrap();
        assert!(matches!(
            quotient(&d3, &not_sub),
            Err(Error::NotSubgroup(_))
        ));
        let not_normal = ElementSubset::new(&d3, [0, t]).unwrap();
        assert!(matches!(
            quotient(&d3, &not_normal),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let d6 = make_dihedral(6).unwrap();
        let (q, proj) = quotient(&d6, &ElementSubset::whole(&d6)).unwrap();
        assert_eq!(q.order(), 1);
        assert!(proj.iter().all(|&p| p == 0));
    }
}
