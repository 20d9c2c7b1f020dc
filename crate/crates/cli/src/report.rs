use std::fmt::Write as _;

use serde::Serialize;

/// Where a reported value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Follows from a theorem applied to the input.
    PaperRule,
    Computed,
    Asserted,
}

impl Tag {
    fn as_str(self) -> &'static str {
        match self {
            Tag::PaperRule => "paper-rule",
            Tag::Computed => "computed",
            Tag::Asserted => "asserted",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub facts: Vec<Entry>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            facts: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString, tag: Tag) -> &mut Self {
        self.facts.push(Entry {
            key: key.into(),
            value: value.to_string(),
            tag,
            source: None,
        });
        self
    }

    /// Like `push`, naming the oracle or rule behind the value.
    pub fn push_from(
        &mut self,
        key: impl Into<String>,
        value: impl ToString,
        tag: Tag,
        source: &str,
    ) -> &mut Self {
        self.facts.push(Entry {
            key: key.into(),
            value: value.to_string(),
            tag,
            source: Some(source.to_string()),
        });
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub sections: Vec<Section>,
    /// A domain failure: violations, contradictions, underived bounds.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub failed: bool,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            sections: Vec::new(),
            failed: false,
        }
    }

    pub fn section(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.subject);
        for s in &self.sections {
            writeln!(out, "\n[{}]", s.title).unwrap();
            let width = s
                .facts
                .iter()
                .map(|e| e.key.chars().count())
                .max()
                .unwrap_or(0);
            for e in &s.facts {
                let pad = width - e.key.chars().count();
                write!(
                    out,
                    "  {}{} : {}  ({}",
                    e.key,
                    " ".repeat(pad),
                    e.value,
                    e.tag.as_str()
                )
                .unwrap();
                if let Some(src) = &e.source {
                    write!(out, ": {src}").unwrap();
                }
                out.push_str(")\n");
            }
        }
        out
    }
}

pub fn render_json(reports: &[Report]) -> String {
    let v = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    v.expect("report serializes") + "\n"
}

pub fn render_text(reports: &[Report]) -> String {
    reports
        .iter()
        .map(Report::to_text)
        .collect::<Vec<_>>()
        .join("\n")
}
