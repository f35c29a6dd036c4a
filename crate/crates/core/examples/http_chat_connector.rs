//! Query a chat-completion endpoint.
//!
//! KGBENCH_ENDPOINT=https://api.openai.com/v1/chat/completions \
//! KGBENCH_MODEL=gpt-4o-mini KGBENCH_KEY=sk-... \
//! cargo run --example http_chat_connector -- "What is RDF?"

use kgbench::connectors::{build_connector, ConnectorKind, ConnectorSpec, Exchange, GenerationContext};

fn main() {
    let Ok(endpoint) = std::env::var("KGBENCH_ENDPOINT") else {
        eprintln!("set KGBENCH_ENDPOINT, KGBENCH_MODEL and KGBENCH_KEY");
        return;
    };
    let mut spec = ConnectorSpec::new("example", ConnectorKind::HttpChat);
    spec.endpoint = Some(endpoint);
    spec.model_name = std::env::var("KGBENCH_MODEL").ok();
    spec.api_key_env = Some("KGBENCH_KEY".into());
    spec.max_tokens = 256;
    let connector = build_connector(&spec, None).expect("valid spec");
    let prompt = std::env::args().nth(1).unwrap_or_else(|| "Reply with the single word OK.".into());
    match connector.generate_text(&[Exchange::user(prompt)], &GenerationContext::default()) {
        Ok(reply) => {
            println!("{}", reply.text);
            println!("meta: {}", serde_json::to_string(&reply.meta).unwrap());
        }
        Err(e) => eprintln!("{} error: {e}", e.kind()),
    }
}
