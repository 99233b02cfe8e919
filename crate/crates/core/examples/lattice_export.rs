//! Reduced labeling of a directory × topic lattice, written as DOT and JSON.

use std::collections::BTreeMap;

use fatcat::aggregate::DirectoryTopicContext;
use fatcat::{compress_ranges, directory_lattice, reduced_labels, to_dot, to_json, FormalContext, TopicInfo};

fn main() -> fatcat::Result<()> {
    let dtc = DirectoryTopicContext::new(FormalContext::new(
        ["src/net", "src/ui", "docs"].map(String::from).to_vec(),
        ["3", "4", "5", "9"].map(String::from).to_vec(),
        &[
            vec![true, true, false, true],
            vec![true, false, true, false],
            vec![true, false, false, false],
        ],
    )?);
    let topics: BTreeMap<u32, TopicInfo> = [
        (3, "error result value return"),
        (4, "socket packet send receive"),
        (5, "window button click render"),
        (9, "retry timeout backoff"),
    ]
    .into_iter()
    .map(|(id, words)| {
        let info = TopicInfo {
            topic_id: id,
            words: words.split(' ').map(String::from).collect(),
            word_scores: None,
        };
        (id, info)
    })
    .collect();

    let lattice = reduced_labels(&directory_lattice(&dtc, None)?, dtc.context());
    println!("topic ids: {}", compress_ranges(topics.keys().copied()));
    print!("{}", to_dot(&lattice, Some(&topics), 3));
    print!("{}", to_json(&lattice));
    Ok(())
}
