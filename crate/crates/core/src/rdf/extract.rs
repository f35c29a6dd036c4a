use super::salvage::salvage_parse_turtle;

/// Contents of the fenced code blocks in a model response, in order.
/// An unterminated final fence runs to the end of the response.
pub fn fenced_blocks(response: &str) -> Vec<String> {
    let mut blocks = Vec::new();
    let mut current: Option<(String, Vec<&str>)> = None;
    for line in response.lines() {
        let trimmed = line.trim_start();
        let fence = ["```", "~~~"].into_iter().find(|f| trimmed.starts_with(f));
        match (&mut current, fence) {
            (None, Some(f)) => current = Some((f.to_string(), Vec::new())),
            (Some((open, lines)), Some(f)) if *open == f && trimmed.trim_end().chars().all(|c| c == '`' || c == '~') => {
                blocks.push(lines.join("\n"));
                current = None;
            }
            (Some((_, lines)), _) => lines.push(line),
            (None, None) => {}
        }
    }
    if let Some((_, lines)) = current {
        blocks.push(lines.join("\n"));
    }
    blocks
}

/// Picks the part of a response most likely to be the Turtle answer: the
/// fenced block with the most salvageable triples (first one on ties), or
/// the whole response when there are no fences.
pub fn extract_turtle_candidate(response: &str) -> String {
    let blocks = fenced_blocks(response);
    let mut best: Option<(usize, String)> = None;
    for block in blocks {
        let count = salvage_parse_turtle(&block).0.len();
        if best.as_ref().is_none_or(|(n, _)| count > *n) {
            best = Some((count, block));
        }
    }
    best.map_or_else(|| response.to_string(), |(_, b)| b)
}
