//! Dynkin quivers, dimension vectors, the Euler form and positive roots.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The on-disk quiver format: `{"vertices": [..], "arrows": [[s, t], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

/// Dynkin type of one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn coxeter_number(self) -> usize {
        match self {
            DynkinType::A(n) => n + 1,
            DynkinType::D(n) => 2 * n - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(_) => 30,
        }
    }

    pub fn exponents(self) -> Vec<usize> {
        match self {
            DynkinType::A(n) => (1..=n).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<usize> = (0..n - 1).map(|i| 2 * i + 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            DynkinType::E(6) => vec![1, 4, 5, 7, 8, 11],
            DynkinType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            DynkinType::E(_) => vec![1, 7, 11, 13, 17, 19, 23, 29],
        }
    }

    /// Number of positive roots, `rank · h / 2`.
    pub fn positive_root_count(self) -> usize {
        self.rank() * self.coxeter_number() / 2
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A finite acyclic quiver whose components are Dynkin diagrams.
///
/// Vertices are stored in lexicographic label order; every index-based API
/// (dimension vectors, projectives, ...) uses that canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
    components: Vec<DynkinType>,
}

impl Quiver {
    /// Builds a connected Dynkin quiver.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let q = Self::build(vertices, arrows)?;
        if q.components.len() > 1 {
            return Err(Error::Disconnected(q.components.len()));
        }
        Ok(q)
    }

    /// Builds a quiver each of whose components is Dynkin, allowing several
    /// components and the empty quiver. Perpendicular categories produce these.
    pub fn new_multi<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        Self::build(vertices, arrows)
    }

    fn build<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let mut labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Malformed(format!("duplicate vertex `{}`", w[0])));
            }
        }
        let index = |s: &str| {
            labels
                .binary_search_by(|l| l.as_str().cmp(s))
                .map_err(|_| Error::UnknownVertex(s.to_owned()))
        };
        let mut idx_arrows = Vec::with_capacity(arrows.len());
        let mut seen = BTreeSet::new();
        for (s, t) in arrows {
            let (s, t) = (index(s.as_ref())?, index(t.as_ref())?);
            if s == t {
                return Err(Error::Cyclic(format!("loop at `{}`", labels[s])));
            }
            if !seen.insert((s, t)) {
                return Err(Error::NonDynkin(format!(
                    "multiple arrows `{}` -> `{}`",
                    labels[s], labels[t]
                )));
            }
            idx_arrows.push((s, t));
        }
        idx_arrows.sort();
        let n = labels.len();
        if topological_order(n, &idx_arrows).is_none() {
            return Err(Error::Cyclic("the arrows contain a directed cycle".into()));
        }
        // An antiparallel pair is a 2-cycle and was rejected above, so the
        // underlying graph is simple here.
        let components = classify(n, &idx_arrows, &labels)?;
        Ok(Self {
            labels,
            arrows: idx_arrows,
            components,
        })
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let arrows: Vec<(&str, &str)> = spec
            .arrows
            .iter()
            .map(|(s, t)| (s.as_str(), t.as_str()))
            .collect();
        let vertices: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
        Self::new(&vertices, &arrows)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.labels.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| (self.labels[s].clone(), self.labels[t].clone()))
                .collect(),
        }
    }

    /// Number of vertices, i.e. the number of simple modules.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_owned()))
    }

    /// Arrows as `(source, target)` index pairs, sorted.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn components(&self) -> &[DynkinType] {
        &self.components
    }

    pub fn out_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.0 == i).map(|a| a.1)
    }

    pub fn in_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().filter(move |a| a.1 == i).map(|a| a.0)
    }

    /// A topological order of the vertices (sources first), ties by label.
    pub fn topological_order(&self) -> Vec<usize> {
        topological_order(self.n(), &self.arrows).expect("quiver is acyclic")
    }

    /// Number of paths from `i` to `j`, for all pairs.
    pub fn path_counts(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let order = self.topological_order();
        let mut counts = vec![vec![0u32; n]; n];
        for (i, row) in counts.iter_mut().enumerate() {
            row[i] = 1;
            for &v in &order {
                let c = row[v];
                if c == 0 {
                    continue;
                }
                for w in self.out_neighbours(v) {
                    row[w] += c;
                }
            }
        }
        counts
    }

    /// Built-in presets: `A1`..`A8` (linear, `1→2→…→n`), `D4`..`D6` and `E6`
    /// (every arrow points away from the branch vertex).
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_owned());
        let (kind, rank) = name.split_at(1.min(name.len()));
        let rank: usize = rank.parse().map_err(|_| unknown())?;
        let (n, edges): (usize, Vec<(usize, usize)>) = match (kind, rank) {
            ("A", 1..=8) => (rank, (1..rank).map(|i| (i, i + 1)).collect()),
            ("D", 4..=6) => {
                // Chain 1 - 2 - ... - (n-2), branch vertex n-2 carries n-1 and n.
                let b = rank - 2;
                let mut e: Vec<_> = (1..b).map(|i| (i + 1, i)).collect();
                e.push((b, rank - 1));
                e.push((b, rank));
                (rank, e)
            }
            ("E", 6) => (6, vec![(2, 1), (3, 2), (3, 4), (4, 5), (3, 6)]),
            _ => return Err(unknown()),
        };
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String)> = edges
            .into_iter()
            .map(|(s, t)| (s.to_string(), t.to_string()))
            .collect();
        Self::new(&labels, &arrows)
    }

    pub const PRESETS: [&'static str; 12] = [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "E6",
    ];

    /// Every quiver with the same underlying graph, including this one, in
    /// order of the bitmask of reversed arrows.
    pub fn orientations(&self) -> Vec<Quiver> {
        let k = self.arrows.len();
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        (0u64..1 << k)
            .map(|mask| {
                let arrows: Vec<(&str, &str)> = self
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(b, &(i, j))| {
                        let (s, t) = if mask >> b & 1 == 1 { (j, i) } else { (i, j) };
                        (self.label(s), self.label(t))
                    })
                    .collect();
                Quiver::new_multi(&labels, &arrows).expect("a reoriented tree is Dynkin")
            })
            .collect()
    }

    pub fn dim_vector(&self, entries: Vec<u32>) -> Result<DimVector> {
        if entries.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: entries.len(),
            });
        }
        Ok(DimVector(entries))
    }
}

/// Parses the JSON quiver description.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let spec: QuiverSpec =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    Quiver::from_spec(&spec)
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn classify(n: usize, arrows: &[(usize, usize)], labels: &[String]) -> Result<Vec<DynkinType>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut comp = vec![usize::MAX; n];
    let mut types = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = types.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        let edges = arrows.iter().filter(|a| comp[a.0] == id).count();
        if edges != members.len() - 1 {
            return Err(Error::NonDynkin(format!(
                "the component containing `{}` has a cycle in its underlying graph",
                labels[start]
            )));
        }
        types.push(tree_type(&members, &adj).ok_or_else(|| {
            Error::NonDynkin(format!(
                "the component containing `{}` is not of type A, D or E",
                labels[start]
            ))
        })?);
    }
    Ok(types)
}

/// Dynkin type of a tree, or `None` for trees that are not ADE.
fn tree_type(members: &[usize], adj: &[Vec<usize>]) -> Option<DynkinType> {
    let n = members.len();
    let branch: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&v| adj[v].len() >= 3)
        .collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*b, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// A dimension vector, indexed by the canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parse(text: &str) -> Option<DimVector> {
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let entries: Option<Vec<u32>> =
                inner.split(',').map(|e| e.trim().parse().ok()).collect();
            return entries.map(DimVector);
        }
        if text.is_empty() {
            return None;
        }
        text.chars()
            .map(|c| c.to_digit(10))
            .collect::<Option<Vec<u32>>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().any(|&x| x >= 10) {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))
        } else {
            self.0.iter().try_for_each(|x| write!(f, "{x}"))
        }
    }
}

/// `⟨a, b⟩ = Σ aᵢbᵢ − Σ_{i→j} aᵢbⱼ`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    for v in [a, b] {
        if v.0.len() != q.n() {
            return Err(Error::DimensionMismatch {
                expected: q.n(),
                got: v.0.len(),
            });
        }
    }
    let diag: i64 =
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (*x as i64) * (*y as i64))
            .sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|&(i, j)| a.0[i] as i64 * b.0[j] as i64)
        .sum();
    Ok(diag - off)
}

/// Positive roots of the underlying diagram, generated by simple reflections
/// from the simple roots. Sorted by height, then lexicographically.
pub fn positive_roots(q: &Quiver) -> Vec<DimVector> {
    let n = q.n();
    // Symmetrised form (x, eᵢ) = 2xᵢ − Σ_{j adjacent to i} xⱼ.
    let pair = |x: &[u32], i: usize| -> i64 {
        let adj: i64 = q
            .arrows()
            .iter()
            .filter_map(|&(s, t)| {
                if s == i {
                    Some(x[t] as i64)
                } else if t == i {
                    Some(x[s] as i64)
                } else {
                    None
                }
            })
            .sum();
        2 * x[i] as i64 - adj
    };
    let mut roots: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(r) = frontier.pop() {
        if !roots.insert(r.clone()) {
            continue;
        }
        for i in 0..n {
            if pair(&r, i) < 0 {
                let mut s = r.clone();
                s[i] += 1;
                if !roots.contains(&s) {
                    frontier.push(s);
                }
            }
        }
    }
    let mut out: Vec<DimVector> = roots.into_iter().map(DimVector).collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        parse_quiver(r#"{"vertices":["1","2"],"arrows":[["1","2"]]}"#).unwrap()
    }

    #[test]
    fn parse_examples() {
        let q = a2();
        assert_eq!(q.n(), 2);
        assert_eq!(q.arrows(), &[(0, 1)]);
        assert_eq!(q.components(), &[DynkinType::A(2)]);
        let a1 = parse_quiver(r#"{"vertices":["1"],"arrows":[]}"#).unwrap();
        assert_eq!(a1.components(), &[DynkinType::A(1)]);
        let err = parse_quiver(r#"{"vertices":["1","2"],"arrows":[["1","2"],["2","1"]]}"#);
        assert!(matches!(err, Err(Error::Cyclic(_))), "{err:?}");
    }

    #[test]
    fn orientations_and_exponents() {
        let a3 = Quiver::preset("A3").unwrap();
        let all = a3.orientations();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], a3);
        assert!(all.iter().all(|q| q.components() == [DynkinType::A(3)]));
        assert_eq!(DynkinType::D(4).exponents(), vec![1, 3, 3, 5]);
        for t in [
            DynkinType::A(5),
            DynkinType::D(6),
            DynkinType::E(6),
            DynkinType::E(8),
        ] {
            let sum: usize = t.exponents().iter().sum();
            assert_eq!(sum, t.positive_root_count());
        }
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(parse_quiver("{"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_quiver(r#"{"vertices":["1"],"arrows":[],"extra":1}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_quiver(r#"{"vertices":["1","2"],"arrows":[]}"#),
            Err(Error::Disconnected(2))
        ));
        // Affine D4 (star with four arms) and a triangle.
        assert!(matches!(
            parse_quiver(
                r#"{"vertices":["c","a","b","d","e"],"arrows":[["c","a"],["c","b"],["c","d"],["c","e"]]}"#
            ),
            Err(Error::NonDynkin(_))
        ));
        assert!(matches!(
            parse_quiver(r#"{"vertices":["1","2","3"],"arrows":[["1","2"],["2","3"],["1","3"]]}"#),
            Err(Error::NonDynkin(_))
        ));
        assert!(matches!(
            parse_quiver(r#"{"vertices":["1"],"arrows":[["1","9"]]}"#),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn presets_have_expected_types() {
        let expect = [
            ("A5", DynkinType::A(5)),
            ("D4", DynkinType::D(4)),
            ("D6", DynkinType::D(6)),
            ("E6", DynkinType::E(6)),
        ];
        for (name, ty) in expect {
            assert_eq!(Quiver::preset(name).unwrap().components(), &[ty]);
        }
        assert!(Quiver::preset("A9").is_err());
        assert!(Quiver::preset("X").is_err());
    }

    #[test]
    fn euler_form_examples() {
        let q = a2();
        let e = |v: Vec<u32>| q.dim_vector(v).unwrap();
        assert_eq!(euler_form(&q, &e(vec![1, 0]), &e(vec![0, 1])).unwrap(), -1);
        assert_eq!(euler_form(&q, &e(vec![1, 1]), &e(vec![1, 1])).unwrap(), 1);
        assert_eq!(euler_form(&q, &e(vec![0, 1]), &e(vec![0, 1])).unwrap(), 1);
        assert!(euler_form(&q, &DimVector(vec![1]), &e(vec![0, 1])).is_err());
    }

    #[test]
    fn root_counts() {
        let count = |name: &str| positive_roots(&Quiver::preset(name).unwrap()).len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A2"), 3);
        assert_eq!(count("A3"), 6);
        assert_eq!(count("D4"), 12);
        for n in 1..=8 {
            assert_eq!(count(&format!("A{n}")), n * (n + 1) / 2);
        }
        for n in 4..=6 {
            assert_eq!(count(&format!("D{n}")), n * (n - 1));
        }
        assert_eq!(count("E6"), 36);
    }

    #[test]
    fn roots_are_real_and_orientation_free() {
        for name in Quiver::PRESETS {
            let q = Quiver::preset(name).unwrap();
            for r in positive_roots(&q) {
                assert_eq!(euler_form(&q, &r, &r).unwrap(), 1, "{name} {r}");
            }
        }
        let alt = Quiver::new(&["1", "2", "3"], &[("2", "1"), ("2", "3")]).unwrap();
        assert_eq!(
            positive_roots(&alt),
            positive_roots(&Quiver::preset("A3").unwrap())
        );
    }

    #[test]
    fn dim_vector_printing() {
        assert_eq!(DimVector(vec![1, 1, 0]).to_string(), "110");
        assert_eq!(DimVector(vec![10, 2]).to_string(), "(10,2)");
        assert_eq!(DimVector::parse("(10,2)"), Some(DimVector(vec![10, 2])));
        assert_eq!(DimVector::parse("011"), Some(DimVector(vec![0, 1, 1])));
    }
}
