//! Per-`n` certificates: the covering-partition upper bound, the assembled
//! ticket set that realises it, and the refutation trace for one ticket less.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{refute, CaseTrace, Disposition, PipelineOptions};
use crate::bounds::{furedi_lower, upper_bound_search, PartitionWitness};
use crate::constructions::{assemble, config_for};
use crate::design::Method;
use crate::error::BoundsError;
use crate::ticket_file::format_tickets;

/// Range in which the tabulated constructions exist and results are proved.
pub const PROVED_RANGE: std::ops::RangeInclusive<usize> = 32..=70;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Conjectured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperWitness {
    pub partition: PartitionWitness,
    /// Piece configuration realising the bound, when one is tabulated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<String>,
    /// SHA-256 of the ticket file of the assembled design.
    #[serde(rename = "ticketsSha256", skip_serializing_if = "Option::is_none")]
    pub tickets_sha256: Option<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerTrace {
    /// Lower bound carried over from `n - 1`.
    pub carry: usize,
    #[serde(rename = "carryProved")]
    pub carry_proved: bool,
    /// Ticket count refuted, when a refutation was needed.
    #[serde(rename = "refutedJ", skip_serializing_if = "Option::is_none")]
    pub refuted_j: Option<usize>,
    pub cases: Vec<CaseTrace>,
}

impl LowerTrace {
    pub fn surviving(&self) -> impl Iterator<Item = &CaseTrace> {
        self.cases.iter().filter(|c| c.disposition == Disposition::Surviving)
    }

    pub fn closed(&self) -> bool {
        self.surviving().next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub n: usize,
    #[serde(rename = "L")]
    pub value: usize,
    pub status: Status,
    pub upper: UpperWitness,
    pub lower: LowerTrace,
    #[serde(rename = "runtimeMs", skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl BoundCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }

    /// One table row: `n L status partition config`.
    pub fn table_row(&self) -> String {
        let parts: Vec<String> = self.upper.partition.parts.iter().map(|a| a.to_string()).collect();
        format!(
            "{:>3} {:>3} {:<11} {:<20} {}",
            self.n,
            self.value,
            match self.status {
                Status::Proved => "proved",
                Status::Conjectured => "conjectured",
            },
            parts.join("+"),
            self.upper.config.as_deref().unwrap_or("-")
        )
    }
}

/// Header matching [`BoundCertificate::table_row`].
pub fn table_header() -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>3} {:>3} {:<11} {:<20} {}", "n", "L", "status", "partition", "config");
    s
}

fn upper_witness(n: usize, ub: usize, partition: PartitionWitness) -> UpperWitness {
    let Ok(config) = config_for(n) else {
        return UpperWitness {
            partition,
            config: None,
            tickets_sha256: None,
            verified: false,
        };
    };
    let design = assemble(&config);
    let valid = design.size() == ub
        && design
            .verify_lottery(6, 2, Method::Clique)
            .map(|v| v.is_valid())
            .unwrap_or(false);
    let digest = Sha256::digest(format_tickets(&design).as_bytes());
    UpperWitness {
        partition,
        config: Some(config.to_string()),
        tickets_sha256: Some(hex::encode(digest)),
        verified: valid,
    }
}

/// Certifies `L(n,6,6,2)` given a lower bound carried from `n - 1`.
///
/// The upper bound is the cheapest covering partition of value at least
/// `carry`. When it exceeds `carry`, one ticket less is refuted case by case;
/// more tickets can always be dropped, so this covers every smaller count.
/// Outside [`PROVED_RANGE`] no refutation is attempted and the result is
/// conjectured.
pub fn certify(n: usize, carry: usize, carry_proved: bool, opts: &PipelineOptions) -> Result<BoundCertificate, BoundsError> {
    let start = Instant::now();
    let (ub, partition) = upper_bound_search(n, carry)?;
    let upper = upper_witness(n, ub, partition);
    // outside the tabulated range only the bounds are reported
    let (refuted_j, cases) = if ub > carry && PROVED_RANGE.contains(&n) {
        (Some(ub - 1), refute(n, ub - 1, opts))
    } else {
        (None, Vec::new())
    };
    let lower = LowerTrace {
        carry,
        carry_proved,
        refuted_j,
        cases,
    };
    let lower_ok = lower.closed() && (refuted_j.is_some() || (carry_proved && ub == carry));
    let status = if PROVED_RANGE.contains(&n) && upper.verified && lower_ok {
        Status::Proved
    } else {
        Status::Conjectured
    };
    Ok(BoundCertificate {
        n,
        value: ub,
        status,
        upper,
        lower,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Certifies `n_min..=n_max` in order, starting from the trivial bound 1.
/// Only proved values, or the Füredi bound, are carried to the next `n`.
pub fn range_report(n_min: usize, n_max: usize, opts: &PipelineOptions) -> Result<Vec<BoundCertificate>, BoundsError> {
    let mut carry = 1;
    let carry_proved = true;
    let mut out = Vec::new();
    for n in n_min..=n_max {
        let cert = certify(n, carry, carry_proved, opts)?;
        if cert.status == Status::Proved {
            carry = cert.value;
        } else {
            // a conjectured value is no lower bound; fall back to the Füredi bound
            carry = carry.max(furedi_lower(n, 6, 6));
        }
        out.push(cert);
    }
    Ok(out)
}
