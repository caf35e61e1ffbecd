//! Tab-separated alignment format.
//!
//! ```text
//! # ontology1	http://example.org/fub
//! # ontology2	http://example.org/fayoum
//! ID	Ontology1	Ontology2	Similarity	Relation
//! 0	http://example.org/fub#Dekan	http://example.org/fayoum#Amid	1.0000000	=
//! ```
//!
//! The two `# ontologyN` lines are written only when the alignment knows its
//! ontologies. Similarity has exactly seven decimals, rounded half to even.

#![allow(clippy::tabs_in_doc_comments)]

use std::fmt::Write;

use super::{Alignment, AlignmentError, Relation};
use crate::onto::Iri;

pub const TSV_HEADER: &str = "ID\tOntology1\tOntology2\tSimilarity\tRelation";

pub fn serialize_alignment_tsv(a: &Alignment) -> String {
    let mut out = String::new();
    if let Some(o) = &a.onto1 {
        let _ = writeln!(out, "# ontology1\t{o}");
    }
    if let Some(o) = &a.onto2 {
        let _ = writeln!(out, "# ontology2\t{o}");
    }
    out.push_str(TSV_HEADER);
    out.push('\n');
    for c in a.correspondences() {
        // `{:.7}` rounds the exact binary value half to even
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{:.7}\t{}",
            c.id, c.entity1, c.entity2, c.similarity, c.relation
        );
    }
    out
}

pub fn parse_alignment_tsv(text: &str) -> Result<Alignment, AlignmentError> {
    let mut alignment = Alignment::default();
    let mut seen_header = false;
    let mut renumbered = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if !seen_header {
                if let Some((key, value)) = comment.trim_start().split_once('\t') {
                    match key {
                        "ontology1" => alignment.onto1 = Some(value.to_string()),
                        "ontology2" => alignment.onto2 = Some(value.to_string()),
                        _ => {}
                    }
                }
            }
            continue;
        }
        if !seen_header {
            if line != TSV_HEADER {
                return Err(AlignmentError::BadHeader { line: line_no });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(AlignmentError::Format {
                line: line_no,
                message: format!("expected 5 columns, found {}", fields.len()),
            });
        }
        let id: usize = fields[0].trim().parse().map_err(|_| AlignmentError::Format {
            line: line_no,
            message: format!("bad id `{}`", fields[0]),
        })?;
        let iri = |s: &str| {
            Iri::new(s.trim()).map_err(|e| AlignmentError::Format {
                line: line_no,
                message: e.to_string(),
            })
        };
        let (e1, e2) = (iri(fields[1])?, iri(fields[2])?);
        let similarity: f64 = fields[3]
            .trim()
            .parse()
            .map_err(|_| AlignmentError::BadSimilarity {
                line: line_no,
                value: fields[3].to_string(),
            })?;
        if !similarity.is_finite() {
            return Err(AlignmentError::BadSimilarity {
                line: line_no,
                value: fields[3].to_string(),
            });
        }
        let relation: Relation =
            fields[4]
                .trim()
                .parse()
                .map_err(|symbol| AlignmentError::UnknownRelation {
                    line: line_no,
                    symbol,
                })?;
        let assigned = alignment.push(e1, e2, relation, similarity)?;
        renumbered |= assigned != id;
    }
    if !seen_header {
        return Err(AlignmentError::BadHeader { line: 1 });
    }
    if renumbered {
        log::warn!("alignment ids were not 0..n-1 in file order; renumbered");
    }
    Ok(alignment)
}
