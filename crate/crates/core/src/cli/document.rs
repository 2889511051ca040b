use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

const HEADER: &str = "# lsc certificate";

/// Line-oriented result of one command. The checksum covers every line
/// before it, so two runs agree byte for byte exactly when their checksums do.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateDocument {
    pub version: String,
    /// Verb and scalar flags, space separated.
    pub command: String,
    /// DSL-valued flags in canonical form, in command-line order.
    pub inputs: Vec<(String, String)>,
    /// `certified`, `refuted`, `unknown` or `ok`.
    pub verdict: String,
    pub kind: String,
    pub detail: String,
    pub output: Vec<String>,
    /// Ascending, deduplicated.
    pub witness: Vec<u64>,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    #[serde(flatten)]
    doc: &'a CertificateDocument,
    checksum: String,
}

fn single_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

impl CertificateDocument {
    pub fn new(command: String, inputs: Vec<(String, String)>) -> Self {
        CertificateDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            inputs,
            verdict: "ok".into(),
            kind: String::new(),
            detail: String::new(),
            output: Vec::new(),
            witness: Vec::new(),
        }
    }

    fn body(&self) -> String {
        let mut s = format!("{HEADER}\nversion: {}\ncommand: {}\n", self.version, single_line(&self.command));
        for (flag, text) in &self.inputs {
            s += &format!("input {flag}: {}\n", single_line(text));
        }
        s += &format!("verdict: {}\nkind: {}\ndetail: {}\n", self.verdict, self.kind, single_line(&self.detail));
        for line in &self.output {
            s += &format!("output: {}\n", single_line(line));
        }
        let w: Vec<String> = self.witness.iter().map(u64::to_string).collect();
        s += &format!("witness: {}\n", w.join(","));
        s
    }

    pub fn checksum(&self) -> String {
        hex::encode(Sha256::digest(self.body().as_bytes()))
    }

    pub fn to_text(&self) -> String {
        let body = self.body();
        let sum = hex::encode(Sha256::digest(body.as_bytes()));
        format!("{body}checksum: {sum}\n")
    }

    pub fn to_json(&self) -> String {
        let j = JsonDocument { doc: self, checksum: self.checksum() };
        serde_json::to_string_pretty(&j).expect("document serializes") + "\n"
    }

    /// Parses the text rendering and checks its checksum.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::input(format!("certificate document: {msg}"));
        let mut lines = text.lines();
        if lines.next() != Some(HEADER) {
            return Err(bad("missing header".into()));
        }
        let mut doc = CertificateDocument::new(String::new(), Vec::new());
        let mut checksum = None;
        for line in lines {
            let (key, value) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|k| (k, ""))).ok_or_else(|| bad(format!("malformed line {line:?}")))?;
            match key {
                "version" => doc.version = value.into(),
                "command" => doc.command = value.into(),
                "verdict" => doc.verdict = value.into(),
                "kind" => doc.kind = value.into(),
                "detail" => doc.detail = value.into(),
                "output" => doc.output.push(value.into()),
                "witness" => {
                    doc.witness = if value.is_empty() {
                        Vec::new()
                    } else {
                        value.split(',').map(|x| x.parse().map_err(|_| bad(format!("bad witness entry {x:?}")))).collect::<Result<_>>()?
                    }
                }
                "checksum" => checksum = Some(value.to_string()),
                k if k.starts_with("input ") => doc.inputs.push((k["input ".len()..].into(), value.into())),
                k => return Err(bad(format!("unknown field {k:?}"))),
            }
        }
        match checksum {
            Some(c) if c == doc.checksum() => Ok(doc),
            Some(_) => Err(bad("checksum mismatch".into())),
            None => Err(bad("missing checksum".into())),
        }
    }

    /// Argument vector that reproduces this document.
    pub fn argv(&self) -> Vec<String> {
        let mut v = vec!["lsc".to_string()];
        v.extend(self.command.split_whitespace().map(String::from));
        for (flag, text) in &self.inputs {
            v.push(flag.clone());
            v.push(text.clone());
        }
        v
    }
}
