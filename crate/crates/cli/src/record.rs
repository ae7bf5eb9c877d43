use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize, Debug)]
pub struct Params {
    pub m: i64,
    pub r: i64,
}

/// One command's output. Field names are fixed by
/// `schema/output_record.schema.json`.
#[derive(Serialize, Debug)]
pub struct OutputRecord {
    pub command: String,
    pub params: Params,
    pub inputs: Map<String, Value>,
    pub results: Vec<Map<String, Value>>,
    pub status: String,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub summary: Map<String, Value>,
    /// Pre-rendered text body, used by `--format text` instead of the
    /// generic key=value listing.
    #[serde(skip)]
    pub text: Option<String>,
}

impl OutputRecord {
    pub fn render(&self, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(self).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => self.csv(),
            Format::Text => Ok(self.plain().into_bytes()),
        }
    }

    fn csv(&self) -> Result<Vec<u8>, String> {
        let rows: Vec<Vec<(String, String)>> = self
            .results
            .iter()
            .map(|r| {
                let mut flat = Vec::new();
                flatten("", &Value::Object(r.clone()), &mut flat);
                flat
            })
            .collect();
        let mut columns: Vec<String> = Vec::new();
        for (key, _) in rows.iter().flatten() {
            if !columns.contains(key) {
                columns.push(key.clone());
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let fixed = ["command", "m", "r", "status"];
        let header: Vec<&str> = fixed.iter().copied().chain(columns.iter().map(String::as_str)).collect();
        w.write_record(&header).map_err(|e| e.to_string())?;
        for row in &rows {
            let mut line = vec![
                self.command.clone(),
                self.params.m.to_string(),
                self.params.r.to_string(),
                self.status.clone(),
            ];
            for c in &columns {
                line.push(row.iter().find(|(k, _)| k == c).map(|(_, v)| v.clone()).unwrap_or_default());
            }
            w.write_record(&line).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }

    fn plain(&self) -> String {
        let mut out = format!(
            "{} (m={}, r={}): {}\n",
            self.command, self.params.m, self.params.r, self.status
        );
        if let Some(body) = &self.text {
            out.push_str(body);
            return out;
        }
        for r in &self.results {
            let mut flat = Vec::new();
            flatten("", &Value::Object(r.clone()), &mut flat);
            let line: Vec<String> = flat.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        let mut flat = Vec::new();
        flatten("", &Value::Object(self.summary.clone()), &mut flat);
        for (k, v) in flat {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), parts.join(" ")));
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn record() -> OutputRecord {
        let results = vec![
            json!({"value": "-52/31", "bits": {"preperiod": "", "period": "0001"}}),
            json!({"value": "3", "extra": [1, 2]}),
        ];
        OutputRecord {
            command: "omega".into(),
            params: Params { m: 5, r: 1 },
            inputs: Map::new(),
            results: results.into_iter().map(|v| v.as_object().unwrap().clone()).collect(),
            status: "exact".into(),
            summary: Map::new(),
            text: None,
        }
    }

    #[test]
    fn csv_flattens_nested_fields() {
        let csv = String::from_utf8(record().render(Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "command,m,r,status,bits.period,bits.preperiod,value,extra");
        assert_eq!(lines[1], "omega,5,1,exact,0001,,-52/31,");
        assert_eq!(lines[2], "omega,5,1,exact,,,3,1 2");
    }

    #[test]
    fn json_is_one_line() {
        let out = String::from_utf8(record().render(Format::Json).unwrap()).unwrap();
        assert_eq!(out.lines().count(), 1);
        assert!(!out.contains("summary"));
    }
}
