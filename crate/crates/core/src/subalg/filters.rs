//! Filters for subalgebra candidates and the nilpotent profile table.

use serde::{Deserialize, Serialize};

use super::{SymplecticAmbient, TargetWindow};
use crate::error::{Error, Result};
use crate::gfla::io::Lines;
use crate::gfla::{nilpotent_jordan_partition, pencil_profile, Elem, Matrix, Partition, Subspace};
use crate::lieproduct::{TargetSpec, Verdict};
use crate::liealg::{
    algebra_profile, identify_simple_type, largest_abelian_in, subalgebra_generate, AlgebraProfile, Generated,
    LieBracket, StructureConstants, TypeIdentification,
};

/// One row `class_label module_role partition`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub class_label: String,
    pub role: String,
    pub partition: Partition,
}

/// Allowed Jordan types of nilpotent elements, per module role.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileTable {
    pub rows: Vec<ProfileRow>,
}

impl ProfileTable {
    pub fn has_role(&self, role: &str) -> bool {
        self.rows.iter().any(|r| r.role == role)
    }

    /// Classes whose row for `role` has partition `p`.
    pub fn classes_with(&self, role: &str, p: &Partition) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.role == role && r.partition == *p)
            .map(|r| r.class_label.as_str())
            .collect()
    }

    /// Whether `p` may occur on `role` (always true when the table has no
    /// rows for that role).
    pub fn allows(&self, role: &str, p: &Partition) -> bool {
        !self.has_role(role) || !self.classes_with(role, p).is_empty()
    }
}

/// Parse a `GFPROF v1` table.
///
/// ```
/// use modlie::subalg::parse_profile_table;
/// let t = parse_profile_table("GFPROF v1\nA4+A2 adjoint 5^26,3\n").unwrap();
/// assert_eq!(t.rows[0].partition.total(), 133);
/// ```
pub fn parse_profile_table(text: &str) -> Result<ProfileTable> {
    let mut lines = Lines::new(text);
    let (n, header) = lines.next_line()?;
    if header.split_whitespace().collect::<Vec<_>>() != ["GFPROF", "v1"] {
        return Err(Error::Parse {
            line: n,
            msg: "expected 'GFPROF v1'".into(),
        });
    }
    let mut rows = Vec::new();
    while !lines.is_done() {
        let (n, line) = lines.next_line()?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: n,
                msg: "expected 'class_label module_role partition'".into(),
            });
        }
        let partition = fields[2].parse().map_err(|e: Error| Error::Parse {
            line: n,
            msg: e.to_string(),
        })?;
        rows.push(ProfileRow {
            class_label: fields[0].into(),
            role: fields[1].into(),
            partition,
        });
    }
    Ok(ProfileTable { rows })
}

pub fn write_profile_table(t: &ProfileTable) -> String {
    let mut out = String::from("GFPROF v1\n");
    for r in &t.rows {
        out.push_str(&format!("{} {} {}\n", r.class_label, r.role, r.partition));
    }
    out
}

/// What the generated subalgebra should be.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetInfo {
    pub spec: TargetSpec,
    /// Dimension of the target algebra: the cap for subalgebra generation.
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubalgCandidate {
    pub coefficients: Vec<Elem>,
    pub verdict: Verdict,
    pub generated_dim: Option<usize>,
    pub profile: Option<AlgebraProfile>,
    pub identification: Option<TypeIdentification>,
    /// `(role, partition)` for the nilpotent elements that were examined.
    pub nilpotent_partitions: Vec<(String, Partition)>,
    pub notes: Vec<String>,
}

fn reject(filter: &str, evidence: String) -> Verdict {
    Verdict::Reject {
        filter: filter.into(),
        evidence,
    }
}

fn is_nilpotent(m: &Matrix) -> bool {
    m.pow(m.rows() as u64).is_zero()
}

/// Structure constants of the subalgebra spanned by `sub` in its own basis.
fn restrict<B: LieBracket>(l: &B, sub: &Subspace) -> StructureConstants {
    let k = sub.dim();
    let mut out = StructureConstants::zero(l.field(), k);
    for i in 0..k {
        for j in i + 1..k {
            let b = l.bracket(&sub.basis()[i], &sub.basis()[j]);
            out.set(i, j, &sub.coordinates(&b).expect("closed subalgebra"));
        }
    }
    out
}

/// The form `F + s · direction`.
pub(crate) fn form_at(ambient: &SymplecticAmbient, direction: Option<&Matrix>, s: Option<Elem>) -> Matrix {
    match (direction, s) {
        (Some(d), Some(s)) => {
            let mut f = ambient.form.clone();
            f.add_scaled(s, d);
            f
        }
        _ => ambient.form.clone(),
    }
}

/// Run, in order: form check, zero, subalgebra generation capped at the
/// target dimension, center, derived algebra, abelian bound, nilpotent
/// Jordan types, type identification.
///
/// `point` holds the window parameters, followed by `s` in pencil mode.
pub fn candidate_filters(
    point: &[Elem],
    window: &TargetWindow,
    ambient: &SymplecticAmbient,
    direction: Option<&Matrix>,
    target: &TargetInfo,
    table: &ProfileTable,
) -> SubalgCandidate {
    let mut c = SubalgCandidate {
        coefficients: point.to_vec(),
        verdict: Verdict::Keep,
        generated_dim: None,
        profile: None,
        identification: None,
        nilpotent_partitions: Vec::new(),
        notes: Vec::new(),
    };
    let n = window.num_parameters();
    let form = form_at(ambient, direction, point.get(n).copied());
    if direction.is_some() {
        let radical = form.rows() - form.rank();
        if radical > 0 {
            c.verdict = reject("form", format!("form parameter gives a radical of dimension {}", radical));
            return c;
        }
    }
    let seeds = window.images(&point[..n]);
    if seeds.iter().all(|v| v.iter().all(|&x| x == 0)) {
        c.verdict = reject("zero", "zero image".into());
        return c;
    }
    let l = ambient.with_form(&form);
    let sub = match subalgebra_generate(&l, &seeds, target.dim) {
        Generated::CapExceeded { dim } => {
            c.generated_dim = Some(dim);
            c.verdict = reject("dimension", format!("generated subalgebra exceeds {} (reached {})", target.dim, dim));
            return c;
        }
        Generated::Subalgebra(s) => s,
    };
    c.generated_dim = Some(sub.dim());
    let k = restrict(&l, &sub);
    let p = algebra_profile(&k);
    c.profile = Some(p.clone());
    if p.center_dim != 0 {
        c.verdict = reject("center", format!("center of dimension {}", p.center_dim));
        return c;
    }
    if p.derived_dim != p.dim {
        c.verdict = reject("derived", format!("derived algebra of dimension {} of {}", p.derived_dim, p.dim));
        return c;
    }
    if let Ok(bound) = target.spec.abelian_bound() {
        let full = Matrix::identity(k.field(), k.dim()).row_vectors();
        if let Some(w) = largest_abelian_in(&k, &full, bound) {
            c.verdict = reject(
                "abelian bound",
                format!("abelian subalgebra of dimension {} > {} ({})", w.dim, bound, w.origin),
            );
            return c;
        }
    }
    for (i, x) in sub.basis().iter().enumerate() {
        let nat = ambient.natural_action(&form, x);
        if !is_nilpotent(&nat) {
            continue;
        }
        let mut roles = vec![("minimal", nilpotent_jordan_partition(&nat).expect("nilpotent"))];
        if sub.dim() == target.dim {
            let mut e = vec![0; k.dim()];
            e[i] = 1;
            if let Ok(part) = nilpotent_jordan_partition(&k.ad(&e)) {
                roles.push(("adjoint", part));
            }
        }
        for (role, part) in roles {
            if !table.allows(role, &part) {
                c.verdict = reject(
                    "profile",
                    format!("nilpotent basis element {} has Jordan type {} on the {} module", i, part, role),
                );
                c.nilpotent_partitions.push((role.into(), part));
                return c;
            }
            c.nilpotent_partitions.push((role.into(), part));
        }
    }
    let id = identify_simple_type(&k);
    if let Some(label) = &id.label {
        if *label != target.spec.label {
            c.verdict = reject("identify", format!("identified as {}, expected {}", label, target.spec.label));
            c.identification = Some(id);
            return c;
        }
    }
    if sub.dim() < target.dim {
        c.notes.push(format!(
            "generates a proper subalgebra of dimension {}; manual treatment required",
            sub.dim()
        ));
    }
    c.identification = Some(id);
    c
}

/// Reject a line `A + xB` of nilpotent elements when neither its generic
/// nor any exceptional Jordan type is allowed on `role`.
pub fn pencil_verdict(a: &Matrix, b: &Matrix, table: &ProfileTable, role: &str) -> Result<Option<Verdict>> {
    if !table.has_role(role) {
        return Ok(None);
    }
    let prof = pencil_profile(a, b)?;
    if table.allows(role, &prof.generic) || prof.exceptional.iter().any(|(_, p)| table.allows(role, p)) {
        return Ok(None);
    }
    Ok(Some(reject(
        "profile",
        format!(
            "generic Jordan type {} on the {} module is not allowed, nor are the {} exceptional types",
            prof.generic,
            role,
            prof.exceptional.len()
        ),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;

    #[test]
    fn table_round_trip() {
        let text = "GFPROF v1\nA4+A2 adjoint 5^26,3\nA4+A2 minimal 5^10,3^2\n";
        let t = parse_profile_table(text).unwrap();
        assert_eq!(write_profile_table(&t), text);
        assert_eq!(t.rows[1].partition.total(), 56);
        assert!(t.allows("adjoint", &"5^26,3".parse().unwrap()));
        assert!(!t.allows("adjoint", &"2^66,1".parse().unwrap()));
        assert!(t.allows("other", &"1".parse().unwrap()));
        assert!(parse_profile_table("GFPROF v2\n").is_err());
        assert!(parse_profile_table("GFPROF v1\nA1 adjoint\n").is_err());
    }

    #[test]
    fn pencil_with_forbidden_generic_type_is_rejected() {
        // A + xB on k^8: two Jordan chains whose lengths depend on x
        let f = Field::prime(31).unwrap();
        let mut a = Matrix::zeros(&f, 8, 8);
        let mut b = Matrix::zeros(&f, 8, 8);
        for i in 0..3 {
            a.set(i + 1, i, 1);
        }
        a.set(5, 4, 1);
        b.set(6, 5, 1);
        b.set(7, 6, 1);
        b.set(4, 3, 1);
        let table = parse_profile_table("GFPROF v1\nX minimal 4^2\n").unwrap();
        // exhaustive oracle: Jordan type at every x
        let mut seen = std::collections::BTreeSet::new();
        for x in f.elements() {
            let mut m = a.clone();
            m.add_scaled(x, &b);
            seen.insert(nilpotent_jordan_partition(&m).unwrap().to_string());
        }
        let v = pencil_verdict(&a, &b, &table, "minimal").unwrap();
        assert_eq!(v.is_some(), !seen.contains("4^2"));
        assert!(v.is_some());
        let generic = pencil_profile(&a, &b).unwrap().generic;
        assert!(seen.contains(&generic.to_string()));
        let open = parse_profile_table(&format!("GFPROF v1\nX minimal {}\n", generic)).unwrap();
        assert_eq!(pencil_verdict(&a, &b, &open, "minimal").unwrap(), None);
    }
}
