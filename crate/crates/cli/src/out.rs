use serde::Serialize;
use serde_json::{Map, Value};

/// Writes records either as text lines or as one JSON object per line.
pub struct Out {
    pub json: bool,
    pub cmd: &'static str,
}

impl Out {
    /// `fields` must serialize to a JSON object; `cmd` is added to it.
    pub fn record(&self, fields: impl Serialize, text: impl FnOnce() -> String) {
        if self.json {
            let mut obj = Map::new();
            obj.insert("cmd".into(), Value::from(self.cmd));
            match serde_json::to_value(fields).expect("records serialize") {
                Value::Object(m) => obj.extend(m),
                other => {
                    obj.insert("value".into(), other);
                }
            }
            println!("{}", Value::Object(obj));
        } else {
            let t = text();
            if !t.is_empty() {
                println!("{t}");
            }
        }
    }
}

/// A doubled integer as a decimal string: `3` → "1.5".
pub fn half(x2: i64) -> String {
    pregroup::HalfInt::from_x2(x2).to_string()
}
