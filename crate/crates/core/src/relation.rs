//! JSON-lines records of linear relations among `Li⁻` values.
//!
//! One record per line:
//! `{"terms":[{"coef":"3/1","index":[1,2]},…],"verified":true,"weight":3,"depth":2}`.
//! `weight` and `depth` are `null` when the terms do not share one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_rational::BigRational;

use crate::polylog::{kernel_element, nfold_product, verify_relation, LinComb, Permutation};
use crate::rational::{parse_rational, to_fraction_string};
use crate::words::Index;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub coef: String,
    pub index: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub terms: Vec<RelationTerm>,
    pub verified: bool,
    pub weight: Option<u64>,
    pub depth: Option<usize>,
}

impl RelationRecord {
    /// Builds a record and fills `verified` by checking the relation.
    pub fn checked(c: &LinComb) -> Self {
        let verified = verify_relation(c).holds();
        Self::from_lincomb(c, verified)
    }

    pub fn from_lincomb(c: &LinComb, verified: bool) -> Self {
        RelationRecord {
            label: None,
            terms: c
                .terms()
                .map(|(s, a)| RelationTerm {
                    coef: to_fraction_string(a),
                    index: s.parts().to_vec(),
                })
                .collect(),
            verified,
            weight: c.homogeneous_weight(),
            depth: c.homogeneous_depth(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn to_lincomb(&self) -> Result<LinComb> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((Index::new(t.index.clone()), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinComb::from_terms(terms))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Parses a JSON-lines document, skipping blank lines. Errors carry the
/// one-based line number.
pub fn parse_jsonl(text: &str) -> Result<Vec<(usize, RelationRecord)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let line = i + 1;
            let rec: RelationRecord = serde_json::from_str(l).map_err(|e| Error::Relation {
                line,
                reason: e.to_string(),
            })?;
            rec.to_lincomb().map_err(|e| Error::Relation {
                line,
                reason: e.to_string(),
            })?;
            Ok((line, rec))
        })
        .collect()
}

/// Products of two mono-index values rewritten as depth-one combinations:
/// `(m, n, [(c, j), …])` stands for `Li⁻_m·Li⁻_n = Σ c·Li⁻_j`.
type ProductIdentity = (u32, u32, &'static [(i64, i64, u32)]);

const PRODUCT_IDENTITIES: &[ProductIdentity] = &[
    (5, 4, &[(-1, 60, 2), (1, 63, 4), (1, 1260, 10)]),
    // the Li⁻_4 coefficient is 5/33; the often-quoted 5/44 leaves (5/132)·Li⁻_4 behind
    (
        6,
        7,
        &[(-691, 5460, 2), (5, 33, 4), (-1, 40, 6), (1, 24024, 14)],
    ),
    (
        8,
        10,
        &[
            (43867, 798, 1),
            (-39787, 510, 3),
            (77, 3, 5),
            (-11056, 4095, 7),
            (5, 66, 9),
            (1, 831402, 19),
        ],
    ),
];

/// `Li⁻_m·Li⁻_n − Σ c·Li⁻_j` for one entry of the product table, with the
/// product expanded through [`nfold_product`].
fn product_identity(m: u32, n: u32, rhs: &[(i64, i64, u32)]) -> LinComb {
    let lhs = nfold_product(&[m, n]).expect("two factors");
    let rhs = LinComb::from_terms(
        rhs.iter()
            .map(|&(p, q, j)| (Index::new(vec![j]), BigRational::new(p.into(), q.into()))),
    );
    lhs.sub(&rhs)
}

/// The relations shipped in `data/paper_examples.jsonl`: two kernel
/// elements from permuted Magnus polynomials and three product identities
/// whose right-hand sides have depth one.
pub fn bundled_relations() -> Vec<RelationRecord> {
    let mut out = Vec::new();
    for (k, sigma) in [("(1;2)", "2 1"), ("(0,1;2)", "2 3 1")] {
        let k = k.parse().expect("valid index");
        let sigma: Permutation = sigma.parse().expect("valid permutation");
        let c = kernel_element(&k, &sigma).expect("sizes agree");
        out.push(RelationRecord::checked(&c).with_label(format!("kernel {k} sigma {sigma}")));
    }
    for &(m, n, rhs) in PRODUCT_IDENTITIES {
        let c = product_identity(m, n, rhs);
        out.push(RelationRecord::checked(&c).with_label(format!("product Li-({m}) Li-({n})")));
    }
    out
}
