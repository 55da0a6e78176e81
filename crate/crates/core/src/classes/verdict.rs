use std::fmt;

use super::{holant_star_tractable, in_a, in_a_alpha, in_l_characterization, in_p, HolantStarWitness};
use crate::{Error, Mat2, Result, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    TractableP,
    TractableA,
    TractableAalpha,
    TractableL,
    TractableHolantStar(HolantStarWitness),
    SharpPHard,
}

impl Label {
    pub fn is_tractable(&self) -> bool {
        *self != Label::SharpPHard
    }

    /// Short name without the witness matrix.
    pub fn tag(&self) -> String {
        match self {
            Label::TractableP => "TractableP".into(),
            Label::TractableA => "TractableA".into(),
            Label::TractableAalpha => "TractableAalpha".into(),
            Label::TractableL => "TractableL".into(),
            Label::TractableHolantStar(w) => format!("TractableHolantStar({})", w.family()),
            Label::SharpPHard => "SharpPHard".into(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::TractableHolantStar(w) => write!(f, "TractableHolantStar({w})"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

/// A verdict with one evidence line per input signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub label: Label,
    pub certificates: Vec<String>,
}

impl ClassVerdict {
    /// Re-runs the membership test named by the label on every signature.
    pub fn recheck(&self, set: &[Signature]) -> bool {
        match &self.label {
            Label::TractableP => set.iter().all(in_p),
            Label::TractableA => set.iter().all(in_a),
            Label::TractableAalpha => set.iter().all(in_a_alpha),
            Label::TractableL => set.iter().all(|f| in_l_characterization(f).0),
            Label::TractableHolantStar(w) => set.iter().all(|f| w.admits(f)),
            Label::SharpPHard => true,
        }
    }

    /// `VERDICT <label>` followed by one certificate line per signature.
    pub fn to_text(&self) -> String {
        let mut out = format!("VERDICT {}\n", self.label);
        for line in &self.certificates {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Tractable when the whole set lies in `𝒫`, `𝒜`, `𝒜^α` or `𝓛` (tested in that order).
pub fn classify_csp2c(set: &[Signature]) -> ClassVerdict {
    let names: Vec<String> = set.iter().map(Signature::display_name).collect();
    type Test = fn(&Signature) -> bool;
    let simple: [(Label, Test, &str); 3] = [
        (Label::TractableP, in_p, "product type"),
        (Label::TractableA, in_a, "affine"),
        (Label::TractableAalpha, in_a_alpha, "alpha-affine"),
    ];
    for (label, test, what) in simple {
        if set.iter().all(test) {
            let certificates = names.iter().map(|n| format!("{n}: {what}")).collect();
            return ClassVerdict { label, certificates };
        }
    }
    let l: Vec<_> = set.iter().map(in_l_characterization).collect();
    if l.iter().all(|(ok, _)| *ok) {
        let certificates = names.iter().zip(&l).map(|(n, (_, c))| format!("{n}: local affine, {c}")).collect();
        return ClassVerdict { label: Label::TractableL, certificates };
    }
    let certificates = set
        .iter()
        .zip(&names)
        .zip(&l)
        .map(|((f, n), (ok, c))| {
            let tail = if *ok { "yes".to_string() } else { format!("no ({c})") };
            format!(
                "{n}: P={} A={} Aalpha={} L={tail}",
                yes_no(in_p(f)),
                yes_no(in_a(f)),
                yes_no(in_a_alpha(f))
            )
        })
        .collect();
    ClassVerdict { label: Label::SharpPHard, certificates }
}

/// Verdict for `Holantᶜ` over a real-valued set: a Holant\* family first, then
/// the `#CSP₂ᶜ` families.
pub fn classify_holant_c(set: &[Signature]) -> Result<ClassVerdict> {
    if let Some(f) = set.iter().find(|f| !f.is_real_valued()) {
        return Err(Error::NotRealValued(f.display_name()));
    }
    if let Some(w) = holant_star_tractable(set) {
        let certificates = set
            .iter()
            .map(|f| match w.matrix() {
                None => format!("{}: every factor has arity at most 2", f.display_name()),
                Some(m) => format!(
                    "{}: every factor in {}-family after inverse of {}",
                    f.display_name(),
                    w.family(),
                    render(m)
                ),
            })
            .collect();
        return Ok(ClassVerdict { label: Label::TractableHolantStar(w), certificates });
    }
    Ok(classify_csp2c(set))
}

fn render(m: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1])
}
