//! Graph JSON (the interchange format), DOT export and schedule CSV/JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph, Role};
use crate::schemes::Schedule;
use crate::verify::{verify_embedding, RotationSystem};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    roles: BTreeMap<Role, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dist_label: Option<BTreeMap<usize, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<usize, Vec<usize>>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Compact JSON with sorted edges and a trailing newline; byte-stable.
pub fn graph_to_json(g: &LabeledGraph) -> String {
    let file = GraphFile {
        n: g.n(),
        edges: g.graph.edges().to_vec(),
        roles: g.roles.clone(),
        dist_label: g.dist_label.clone(),
        rotation: g.rotation.as_ref().map(|r| r.as_map().clone()),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<LabeledGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(parse_err)?;
    let graph = Graph::new(file.n, &file.edges).map_err(parse_err)?;
    let mut lg = LabeledGraph::plain(graph);
    lg.roles = file.roles;
    lg.dist_label = file.dist_label;
    lg.check().map_err(parse_err)?;
    if let Some(rot) = file.rotation {
        let rot = RotationSystem::from_map(rot);
        verify_embedding(&lg.graph, &rot).map_err(parse_err)?;
        lg.rotation = Some(rot);
    }
    Ok(lg)
}

/// Undirected DOT; terminals are double circles, shortcut edges red.
pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut role_of: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (r, &v) in &g.roles {
        role_of.entry(v).or_default().push(r.name());
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match role_of.get(&v) {
            Some(names) => out.push_str(&format!("  {v} [shape=doublecircle, label=\"{v} ({})\"];\n", names.join(","))),
            None => out.push_str(&format!("  {v};\n")),
        }
    }
    for &(u, v) in g.graph.edges() {
        if g.shortcuts.contains(&(u, v)) {
            out.push_str(&format!("  {u} -- {v} [color=red];\n"));
        } else {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct Row {
    round: usize,
    caller: usize,
    callee: usize,
}

/// `round,caller,callee` rows sorted by round, then caller.
pub fn schedule_to_csv(s: &Schedule) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    // header is written even when there are no rows
    w.write_record(["round", "caller", "callee"]).expect("in-memory write");
    for (round, caller, callee) in s.rows() {
        w.write_record([round.to_string(), caller.to_string(), callee.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

/// Parses schedule CSV. Without `origin`, the originator is the caller of
/// the first round-1 row (the only vertex informed before round 1).
pub fn schedule_from_csv(text: &str, origin: Option<usize>) -> Result<Schedule> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rd.headers().map_err(parse_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["round", "caller", "callee"] {
        return Err(Error::Parse("schedule CSV header must be round,caller,callee".into()));
    }
    let mut rows = Vec::new();
    for rec in rd.deserialize::<Row>() {
        let r = rec.map_err(parse_err)?;
        if r.round == 0 {
            return Err(Error::Parse("schedule rounds start at 1".into()));
        }
        rows.push((r.round, r.caller, r.callee));
    }
    let origin = match origin {
        Some(o) => o,
        None => rows
            .iter()
            .filter(|r| r.0 == 1)
            .map(|r| r.1)
            .min()
            .ok_or_else(|| Error::Parse("cannot infer the originator: no round-1 call (pass --origin)".into()))?,
    };
    Ok(Schedule::from_rows(origin, &rows))
}

pub fn schedule_to_json(s: &Schedule) -> String {
    let mut out = serde_json::to_string(s).expect("schedule serializes");
    out.push('\n');
    out
}

pub fn schedule_from_json(text: &str) -> Result<Schedule> {
    serde_json::from_str(text).map_err(parse_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{accelerated_binomial, mirrored_binomial};
    use crate::schemes::Call;

    #[test]
    fn json_round_trip_is_byte_identical() {
        for g in [mirrored_binomial(3).unwrap(), accelerated_binomial(3).0] {
            let text = graph_to_json(&g);
            let back = graph_from_json(&text).unwrap();
            assert_eq!(graph_to_json(&back), text);
            assert_eq!(back.graph, g.graph);
            assert_eq!(back.roles, g.roles);
        }
    }

    #[test]
    fn json_shape() {
        let g = mirrored_binomial(2).unwrap();
        assert_eq!(
            graph_to_json(&g),
            "{\"n\":4,\"edges\":[[0,1],[1,2],[2,3]],\"roles\":{\"s\":0,\"t\":3,\"s_prime\":1,\"t_prime\":2}}\n"
        );
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        for bad in [
            "{",
            "{\"n\":2,\"edges\":[[0,0]],\"roles\":{}}",
            "{\"n\":2,\"edges\":[[0,2]],\"roles\":{}}",
            "{\"n\":2,\"edges\":[[0,1]],\"roles\":{\"s\":5}}",
            "{\"n\":2,\"edges\":[[0,1]],\"roles\":{},\"extra\":1}",
            "{\"n\":3,\"edges\":[[0,1],[1,2]],\"roles\":{},\"rotation\":{\"0\":[1],\"1\":[0],\"2\":[1]}}",
        ] {
            assert!(matches!(graph_from_json(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn dot_marks_terminals_and_shortcuts() {
        let (ab, _) = accelerated_binomial(2);
        let dot = graph_to_dot(&ab);
        assert!(dot.contains("0 [shape=doublecircle"));
        assert!(dot.contains("0 -- 3 [color=red];"));
        assert!(dot.starts_with("graph G {"));
    }

    #[test]
    fn csv_round_trip() {
        let s = Schedule { origin: 2, rounds: vec![vec![Call::new(2, 1)], vec![Call::new(2, 3), Call::new(1, 0)]] };
        let text = schedule_to_csv(&s);
        assert_eq!(text, "round,caller,callee\n1,2,1\n2,1,0\n2,2,3\n");
        let back = schedule_from_csv(&text, None).unwrap();
        assert_eq!(back.rows(), s.rows());
        assert_eq!(back.origin, 2);
        assert!(schedule_from_csv("round,caller,callee\n", None).is_err());
        assert_eq!(schedule_from_csv("round,caller,callee\n", Some(0)).unwrap().len(), 0);
        assert!(schedule_from_csv("a,b,c\n1,2,3\n", None).is_err());
        assert_eq!(schedule_from_json(&schedule_to_json(&s)).unwrap(), s);
    }
}
