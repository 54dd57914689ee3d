//! Text form of an ordered-cuts tree: one line `v parent | members` per sequence node,
//! in sequence order, with `-` as the source's parent.

use std::fmt::Write as _;

use cuttree_core::OcTree;

pub fn write_oc_tree(t: &OcTree) -> String {
    let mut out = String::new();
    for (v, block) in t.blocks() {
        let parent = match t.parent(v).expect("sequence node") {
            Some(p) => p.0.to_string(),
            None => "-".to_owned(),
        };
        let members: Vec<String> = block.iter().map(|u| u.0.to_string()).collect();
        writeln!(out, "{} {} | {}", v.0, parent, members.join(" ")).expect("writing to a String");
    }
    out
}
