//! Network data model: nodes, indexed undirected arcs, arc working
//! probabilities, the edge-list text format and the directed-arc expansion
//! used by the single-pair baseline.
//!
//! Nodes are 0-based in the Rust API and 1-based in every text format.
//! Arc `k` of a [`Graph`] is always coordinate `k` of a state vector.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected arc between two distinct nodes, kept in input orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub u: usize,
    pub v: usize,
}

impl Arc {
    pub fn new(u: usize, v: usize) -> Self {
        Arc { u, v }
    }

    /// The endpoint opposite `w`.
    #[inline]
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArcProbabilities {
    Homogeneous(f64),
    PerArc(Vec<f64>),
}

/// One assumption violation found by [`validate_parts`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NodeOutOfRange { arc: usize, node: usize },
    Loop { arc: usize, node: usize },
    Parallel { arc: usize, first: usize },
    Probability { arc: Option<usize>, value: f64 },
    ProbabilityCount { expected: usize, got: usize },
    Disconnected { components: usize },
    Degenerate,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the model assumptions on raw graph parts: no loops, no parallel
/// arcs, node indices in range, probabilities in `[0, 1]` and, when
/// `require_connected` is set, connectivity with every arc working.
/// A disconnected graph without `require_connected` is reported as a warning.
pub fn validate_parts(
    n: usize,
    arcs: &[Arc],
    probs: &ArcProbabilities,
    require_connected: bool,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    if n < 2 || arcs.is_empty() {
        report.violations.push(Violation::Degenerate);
    }

    let mut seen = std::collections::HashMap::with_capacity(arcs.len());
    let mut in_range = true;
    for (k, arc) in arcs.iter().enumerate() {
        for node in [arc.u, arc.v] {
            if node >= n {
                report
                    .violations
                    .push(Violation::NodeOutOfRange { arc: k, node });
                in_range = false;
            }
        }
        if arc.u == arc.v {
            report.violations.push(Violation::Loop {
                arc: k,
                node: arc.u,
            });
            continue;
        }
        if let Some(&first) = seen.get(&arc.key()) {
            report
                .violations
                .push(Violation::Parallel { arc: k, first });
        } else {
            seen.insert(arc.key(), k);
        }
    }

    match probs {
        ArcProbabilities::Homogeneous(p) => {
            if !(0.0..=1.0).contains(p) {
                report.violations.push(Violation::Probability {
                    arc: None,
                    value: *p,
                });
            }
        }
        ArcProbabilities::PerArc(ps) => {
            if ps.len() != arcs.len() {
                report.violations.push(Violation::ProbabilityCount {
                    expected: arcs.len(),
                    got: ps.len(),
                });
            }
            for (k, p) in ps.iter().enumerate() {
                if !(0.0..=1.0).contains(p) {
                    report.violations.push(Violation::Probability {
                        arc: Some(k),
                        value: *p,
                    });
                }
            }
        }
    }

    if in_range && n > 0 {
        let components = count_components(n, arcs);
        if components > 1 {
            if require_connected {
                report
                    .violations
                    .push(Violation::Disconnected { components });
            } else {
                report.warnings.push(format!(
                    "graph is disconnected ({components} components); pairs in different components have reliability 0"
                ));
            }
        }
    }
    report
}

fn count_components(n: usize, arcs: &[Arc]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for a in arcs {
        adj[a.u].push(a.v);
        adj[a.v].push(a.u);
    }
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut components = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    components
}

impl Violation {
    fn into_error(self, n: usize, arcs: &[Arc]) -> Error {
        match self {
            Violation::NodeOutOfRange { arc, node } => Error::NodeOutOfRange {
                arc: arc + 1,
                node: node + 1,
                n,
            },
            Violation::Loop { arc, node } => Error::LoopArc {
                arc: arc + 1,
                node: node + 1,
            },
            Violation::Parallel { arc, first } => Error::ParallelArc {
                arc: arc + 1,
                first: first + 1,
                u: arcs[arc].u + 1,
                v: arcs[arc].v + 1,
            },
            Violation::Probability { value, .. } => Error::Probability { value },
            Violation::ProbabilityCount { expected, got } => {
                Error::Argument(format!("{got} arc probabilities given for {expected} arcs"))
            }
            Violation::Disconnected { components } => Error::Disconnected { components },
            Violation::Degenerate => Error::Degenerate,
        }
    }
}

/// A binary-state undirected network. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    arcs: Vec<Arc>,
    probs: ArcProbabilities,
    connected: bool,
    connectivity_enforced: bool,
    // per node: (neighbor, arc index), sorted by neighbor
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph that must be connected with all arcs working.
    pub fn new(n: usize, arcs: Vec<Arc>, probs: ArcProbabilities) -> Result<Self> {
        Self::with_options(n, arcs, probs, true)
    }

    pub fn with_options(
        n: usize,
        arcs: Vec<Arc>,
        probs: ArcProbabilities,
        require_connected: bool,
    ) -> Result<Self> {
        let report = validate_parts(n, &arcs, &probs, require_connected);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(v.into_error(n, &arcs));
        }
        let connected = report.warnings.is_empty();

        let mut adjacency = vec![Vec::new(); n];
        for (k, a) in arcs.iter().enumerate() {
            adjacency[a.u].push((a.v, k));
            adjacency[a.v].push((a.u, k));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Graph {
            n,
            arcs,
            probs,
            connected,
            connectivity_enforced: require_connected,
            adjacency,
        })
    }

    /// Convenience constructor from 1-based node pairs.
    pub fn from_labels(
        n: usize,
        pairs: &[(usize, usize)],
        probs: ArcProbabilities,
    ) -> Result<Self> {
        let arcs = labels_to_arcs(n, pairs)?;
        Self::new(n, arcs, probs)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn probabilities(&self) -> &ArcProbabilities {
        &self.probs
    }

    pub fn arc_probability(&self, k: usize) -> f64 {
        match &self.probs {
            ArcProbabilities::Homogeneous(p) => *p,
            ArcProbabilities::PerArc(ps) => ps[k],
        }
    }

    /// The common arc probability when every arc has exactly the same value.
    pub fn homogeneous_p(&self) -> Option<f64> {
        match &self.probs {
            ArcProbabilities::Homogeneous(p) => Some(*p),
            ArcProbabilities::PerArc(ps) => {
                let first = ps[0];
                ps.iter().all(|&p| p == first).then_some(first)
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn connectivity_enforced(&self) -> bool {
        self.connectivity_enforced
    }

    /// `(neighbor, arc index)` pairs incident to `v`, ascending by neighbor.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .is_ok()
    }

    pub fn validate(&self, require_connected: bool) -> ValidationReport {
        validate_parts(self.n, &self.arcs, &self.probs, require_connected)
    }

    /// Same graph with a different probability assignment.
    pub fn with_probabilities(&self, probs: ArcProbabilities) -> Result<Self> {
        Self::with_options(self.n, self.arcs.clone(), probs, self.connectivity_enforced)
    }

    /// Writes the edge-list format. Per-arc probabilities are written as a
    /// third column; a homogeneous `p` is left to the caller.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.arcs.len());
        for (k, a) in self.arcs.iter().enumerate() {
            match &self.probs {
                ArcProbabilities::Homogeneous(_) => {
                    let _ = writeln!(out, "{} {}", a.u + 1, a.v + 1);
                }
                ArcProbabilities::PerArc(ps) => {
                    let _ = writeln!(out, "{} {} {}", a.u + 1, a.v + 1, ps[k]);
                }
            }
        }
        out
    }
}

fn labels_to_arcs(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<Arc>> {
    pairs
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| {
            for node in [u, v] {
                if node == 0 || node > n {
                    return Err(Error::NodeOutOfRange {
                        arc: k + 1,
                        node,
                        n,
                    });
                }
            }
            Ok(Arc::new(u - 1, v - 1))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Homogeneous arc probability, required iff the file has no `p` column.
    pub p: Option<f64>,
    pub allow_disconnected: bool,
}

/// Parses the edge-list format:
///
/// ```text
/// # comment
/// n m
/// u v [p]      (exactly m lines, 1-based nodes)
/// ```
pub fn parse_graph(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing \"n m\" header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be \"n m\""));
    }
    let n = parse_count(hline, fields[0], "n")?;
    let m = parse_count(hline, fields[1], "m")?;

    let mut pairs = Vec::with_capacity(m);
    let mut per_arc: Vec<f64> = Vec::new();
    let mut has_column: Option<bool> = None;
    for _ in 0..m {
        let (line, body) = lines.next().ok_or_else(|| {
            let last = text.lines().count();
            parse_err(
                last,
                &format!("expected {m} arc lines, found {}", pairs.len()),
            )
        })?;
        let fields: Vec<&str> = body.split_whitespace().collect();
        let with_p = match fields.len() {
            2 => false,
            3 => true,
            _ => return Err(parse_err(line, "arc line must be \"u v\" or \"u v p\"")),
        };
        match has_column {
            None => has_column = Some(with_p),
            Some(prev) if prev != with_p => {
                return Err(parse_err(
                    line,
                    "probability column present on some arc lines only",
                ))
            }
            _ => {}
        }
        let u = parse_count(line, fields[0], "u")?;
        let v = parse_count(line, fields[1], "v")?;
        pairs.push((u, v));
        if with_p {
            let p: f64 = fields[2]
                .parse()
                .map_err(|_| parse_err(line, &format!("bad probability {:?}", fields[2])))?;
            per_arc.push(p);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, &format!("more than {m} arc lines")));
    }
    if n < 2 || m == 0 {
        return Err(Error::Degenerate);
    }

    let probs = match (has_column == Some(true), opts.p) {
        (true, Some(_)) => return Err(Error::ConflictingProbability),
        (true, None) => ArcProbabilities::PerArc(per_arc),
        (false, Some(p)) => ArcProbabilities::Homogeneous(p),
        (false, None) => return Err(Error::MissingProbability),
    };
    let arcs = labels_to_arcs(n, &pairs)?;
    Graph::with_options(n, arcs, probs, !opts.allow_disconnected)
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("bad {what} {s:?}")))
}

/// A directed arc produced by [`directed_expand`]; `arc` is the originating
/// undirected arc index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedArc {
    pub tail: usize,
    pub head: usize,
    pub arc: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedExpansion {
    pub n: usize,
    pub darcs: Vec<DirectedArc>,
    pub source: usize,
    pub sink: usize,
}

impl DirectedExpansion {
    pub fn len(&self) -> usize {
        self.darcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darcs.is_empty()
    }
}

/// Replaces every undirected arc `{u, v}` by `u→v` then `v→u`, dropping
/// arcs that enter `source` or leave `sink`. Order follows the original arc
/// index, forward direction first.
pub fn directed_expand(g: &Graph, source: usize, sink: usize) -> Result<DirectedExpansion> {
    let n = g.node_count();
    for node in [source, sink] {
        if node >= n {
            return Err(Error::NodeIndex { node: node + 1, n });
        }
    }
    if source == sink {
        return Err(Error::SameTerminals(source + 1));
    }
    let darcs = g
        .arcs()
        .iter()
        .enumerate()
        .flat_map(|(k, a)| {
            [
                DirectedArc {
                    tail: a.u,
                    head: a.v,
                    arc: k,
                },
                DirectedArc {
                    tail: a.v,
                    head: a.u,
                    arc: k,
                },
            ]
        })
        .filter(|d| d.head != source && d.tail != sink)
        .collect();
    Ok(DirectedExpansion {
        n,
        darcs,
        source,
        sink,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BRIDGE: &str = "4 5\n1 2\n1 3\n2 3\n2 4\n3 4\n";

    fn opts(p: f64) -> ParseOptions {
        ParseOptions {
            p: Some(p),
            allow_disconnected: false,
        }
    }

    #[test]
    fn parses_bridge_in_file_order() {
        let g = parse_graph(BRIDGE, opts(0.9)).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.arc_count(), 5);
        let pairs: Vec<_> = g.arcs().iter().map(|a| (a.u + 1, a.v + 1)).collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(g.homogeneous_p(), Some(0.9));
    }

    #[test]
    fn smallest_network() {
        let g = parse_graph("2 1\n1 2\n", opts(0.5)).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (2, 1));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# bridge\n\n4 5\n# arcs\n1 2\n1 3\n2 3\n\n2 4\n3 4\n";
        let g = parse_graph(text, opts(0.9)).unwrap();
        assert_eq!(g.arc_count(), 5);
    }

    #[test]
    fn rejects_parallel_arcs() {
        let err = parse_graph("3 2\n1 2\n1 2\n", opts(0.9)).unwrap_err();
        assert!(
            matches!(
                err,
                Error::ParallelArc {
                    arc: 2,
                    first: 1,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_graph("3 2\n1 2\n2 1\n", opts(0.9)).unwrap_err();
        assert!(matches!(err, Error::ParallelArc { .. }));
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("2 1\n1 1\n", "loop"),
            ("2 1\n1 3\n", "range"),
            ("2 1\n0 2\n", "range"),
            ("2 1\n1 2 1.5\n", "prob"),
            ("2 1\n1 2 -0.1\n", "prob"),
            ("3 2\n1 2 0.5\n2 3\n", "mixed"),
            ("2 1\n1 x\n", "malformed"),
            ("2 2\n1 2\n", "short"),
            ("2 1\n1 2\n1 2\n", "long"),
            ("2\n1 2\n", "header"),
            ("", "empty"),
            ("4 2\n1 2\n3 4\n", "disconnected"),
        ];
        for (text, what) in cases {
            let p = if text.contains("0.5") || text.contains("1.5") || text.contains("-0.1") {
                None
            } else {
                Some(0.9)
            };
            let r = parse_graph(
                text,
                ParseOptions {
                    p,
                    allow_disconnected: false,
                },
            );
            assert!(r.is_err(), "{what} accepted");
        }
        assert!(matches!(
            parse_graph("4 2\n1 2\n3 4\n", opts(0.9)),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(matches!(
            parse_graph("2 1\n1 2\n", ParseOptions::default()),
            Err(Error::MissingProbability)
        ));
        assert!(matches!(
            parse_graph("2 1\n1 2 0.3\n", opts(0.9)),
            Err(Error::ConflictingProbability)
        ));
        assert!(matches!(
            parse_graph("2 1\n1 2\n", opts(1.1)),
            Err(Error::Probability { .. })
        ));
    }

    #[test]
    fn disconnected_allowed_with_override() {
        let g = parse_graph(
            "4 2\n1 2\n3 4\n",
            ParseOptions {
                p: Some(0.9),
                allow_disconnected: true,
            },
        )
        .unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn per_arc_column() {
        let text = "4 5\n1 2 0.9\n1 3 0.8\n2 3 0.7\n2 4 0.6\n3 4 0.5\n";
        let g = parse_graph(text, ParseOptions::default()).unwrap();
        assert_eq!(
            g.probabilities(),
            &ArcProbabilities::PerArc(vec![0.9, 0.8, 0.7, 0.6, 0.5])
        );
        assert_eq!(g.homogeneous_p(), None);
        let same = parse_graph("2 1\n1 2 0.25\n", ParseOptions::default()).unwrap();
        assert_eq!(same.homogeneous_p(), Some(0.25));
    }

    #[test]
    fn validate_reports() {
        let g = parse_graph(BRIDGE, opts(0.9)).unwrap();
        assert!(g.validate(true).is_valid());

        let arcs = vec![Arc::new(0, 1), Arc::new(2, 3)];
        let p = ArcProbabilities::Homogeneous(0.9);
        let strict = validate_parts(4, &arcs, &p, true);
        assert_eq!(
            strict.violations,
            vec![Violation::Disconnected { components: 2 }]
        );
        let lax = validate_parts(4, &arcs, &p, false);
        assert!(lax.is_valid());
        assert_eq!(lax.warnings.len(), 1);

        let bad = validate_parts(
            3,
            &[Arc::new(0, 0), Arc::new(0, 1), Arc::new(1, 0)],
            &p,
            false,
        );
        assert!(bad
            .violations
            .contains(&Violation::Loop { arc: 0, node: 0 }));
        assert!(bad
            .violations
            .contains(&Violation::Parallel { arc: 2, first: 1 }));
    }

    #[test]
    fn expand_bridge() {
        let g = parse_graph(BRIDGE, opts(0.9)).unwrap();
        let d = directed_expand(&g, 0, 3).unwrap();
        let got: Vec<_> = d.darcs.iter().map(|a| (a.tail + 1, a.head + 1)).collect();
        assert_eq!(got, vec![(1, 2), (1, 3), (2, 3), (3, 2), (2, 4), (3, 4)]);
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn expand_path_and_star() {
        let g = parse_graph("2 1\n1 2\n", opts(0.9)).unwrap();
        let d = directed_expand(&g, 0, 1).unwrap();
        assert_eq!(
            d.darcs,
            vec![DirectedArc {
                tail: 0,
                head: 1,
                arc: 0
            }]
        );

        // star centred at 2: e12 e21 e23 e32 e24 e42, minus e21 (enters 1), e42 (leaves 4)
        let g = parse_graph("4 3\n1 2\n2 3\n2 4\n", opts(0.9)).unwrap();
        let d = directed_expand(&g, 0, 3).unwrap();
        let got: Vec<_> = d.darcs.iter().map(|a| (a.tail + 1, a.head + 1)).collect();
        assert_eq!(got, vec![(1, 2), (2, 3), (3, 2), (2, 4)]);

        assert!(matches!(
            directed_expand(&g, 1, 1),
            Err(Error::SameTerminals(2))
        ));
        assert!(matches!(
            directed_expand(&g, 0, 9),
            Err(Error::NodeIndex { .. })
        ));
    }

    #[test]
    fn neighbors_sorted() {
        let g = parse_graph("4 5\n3 4\n2 4\n2 3\n1 3\n1 2\n", opts(0.5)).unwrap();
        let ns: Vec<_> = g.neighbors(1).iter().map(|&(w, _)| w).collect();
        assert_eq!(ns, vec![0, 2, 3]);
        assert!(g.has_arc(3, 2));
        assert!(!g.has_arc(0, 3));
    }
}
