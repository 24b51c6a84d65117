//! Generated abstracts with dictionary terms planted at known offsets.

use std::collections::BTreeSet;

use lodchem::litxval::AbstractDoc;
use rand::seq::SliceRandom;
use rand::Rng;

pub const TERM_LETTERS: &[u8] = b"abcdefghijklm";
pub const FILLER_LETTERS: &[u8] = b"nopqrstuvwxyz";

pub fn word(rng: &mut impl Rng, letters: &[u8], len: std::ops::RangeInclusive<usize>) -> String {
    let n = rng.gen_range(len);
    (0..n).map(|_| letters[rng.gen_range(0..letters.len())] as char).collect()
}

pub fn random_case(rng: &mut impl Rng, s: &str) -> String {
    s.chars()
        .map(|c| if rng.gen_bool(0.5) { c.to_ascii_uppercase() } else { c })
        .collect()
}

/// Terms built from one alphabet, filler from a disjoint one, so the only
/// matches in a generated document are the planted ones.
pub fn random_terms(rng: &mut impl Rng, n: usize) -> Vec<(String, String)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let words = rng.gen_range(1..=3);
        let t: Vec<String> = (0..words).map(|_| word(rng, TERM_LETTERS, 3..=8)).collect();
        let t = t.join(" ");
        if seen.insert(t.clone()) {
            out.push((t, (out.len() + 1).to_string()));
        }
    }
    out
}

pub struct Planted {
    pub docs: Vec<AbstractDoc>,
    /// (pmid, start, end, normalized term)
    pub spans: Vec<(u64, usize, usize, String)>,
}

pub fn plant(rng: &mut impl Rng, terms: &[(String, String)], n_docs: usize) -> Planted {
    let mut docs = Vec::new();
    let mut spans = Vec::new();
    for i in 0..n_docs {
        let pmid = 5000 + i as u64;
        // text is title + "\n" + body and the title is empty
        let mut body = String::new();
        let mut offset = 1usize;
        for _ in 0..rng.gen_range(0..8) {
            for _ in 0..rng.gen_range(1..4) {
                let w = word(rng, FILLER_LETTERS, 2..=7);
                offset += w.chars().count() + 1;
                body.push_str(&w);
                body.push(' ');
            }
            let (term, _) = terms.choose(rng).unwrap();
            let ws = [" ", "  ", "\t", " \n "].choose(rng).unwrap();
            let surface = random_case(rng, &term.split(' ').collect::<Vec<_>>().join(ws));
            let len = surface.chars().count();
            spans.push((pmid, offset, offset + len, term.clone()));
            let sep = [" ", ", ", ". ", " ("].choose(rng).unwrap();
            offset += len + sep.chars().count();
            body.push_str(&surface);
            body.push_str(sep);
        }
        body.push_str("end");
        docs.push(AbstractDoc::new(pmid, 2000, "", &body));
    }
    Planted { docs, spans }
}
