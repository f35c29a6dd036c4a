//! Record responses from a connector once, then serve them from the cache.

use std::sync::Arc;

use kgbench::connectors::{
    CachedConnector, Connector, Exchange, GenerationContext, ReplayCache, ReplayConnector, ScriptedConnector,
};

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ReplayCache::new(dir.path());
    let shouty = ScriptedConnector::from_fn("shouty", |conv, _| conv.last().unwrap().content.to_uppercase());
    let live = CachedConnector::new(Arc::new(shouty), cache.clone());

    let conversation = vec![Exchange::user("say hello")];
    let ctx = GenerationContext::default();
    let first = live.generate_text(&conversation, &ctx).unwrap();
    println!("recorded: {}", first.text);

    let replay = ReplayConnector::new("shouty", cache.clone());
    println!("replayed: {}", replay.generate_text(&conversation, &ctx).unwrap().text);
    match replay.generate_text(&[Exchange::user("something new")], &ctx) {
        Ok(_) => unreachable!(),
        Err(e) => println!("miss: {e}"),
    }
    let entry = cache.lookup("shouty", &conversation).unwrap().unwrap();
    println!("{}", serde_json::to_string_pretty(&entry).unwrap());
}
