//! Start the HTTP service on a free port and call a few endpoints.

use serde_json::{json, Value};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let base = format!("http://{}/api", listener.local_addr()?);
    tokio::spawn(ornata::service::serve_on(listener));
    let client = reqwest::Client::new();

    let requests = [
        ("parse", json!({ "formula": "sin(4*t)^2 + cos(4*t)" })),
        ("parse", json!({ "formula": "sin(" })),
        ("solid", json!({ "enumerate": true })),
        ("surface/mesh", json!({ "surface": { "f": "x^2+y^2+z^2-1" }, "resolution": 16 })),
        ("frame", json!({ "frame": { "kind": "bridge", "n": 5 } })),
    ];
    for (path, body) in requests {
        let resp = client.post(format!("{base}/{path}")).json(&body).send().await?;
        let status = resp.status();
        let mut v: Value = resp.json().await?;
        for bulky in ["obj", "svg", "csv", "layout", "cut_list"] {
            if let Some(o) = v.as_object_mut() {
                o.remove(bulky);
            }
        }
        println!("POST /api/{path} -> {status}\n  {v}");
    }
    Ok(())
}
