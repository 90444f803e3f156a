//! The subcommands. Each returns a JSON value and a text rendering.

use coxcalc::bunched::{
    bunched_ring_from_fan, canonical_toric_ambient, canonical_toric_ambient_with, enumerate_maximal_true_bunches,
    BunchedRing,
};
use coxcalc::cones::Fan;
use coxcalc::error::Error;
use coxcalc::geometry::{
    canonical_class, canonical_class_complexity_one, dimension, divisor_cones, fano_gorenstein, picard,
    picard_data_rank_one, strata, IntersectionForm,
};
use coxcalc::gitfan::{describe_semistable, enumerate_gitfan, git_cone, moving_cone, semistable_pattern};
use coxcalc::graded::{recognize_complexity_one, GradedPresentation};
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::IntVec;
use coxcalc::linalg::Rat;
use coxcalc::modifications::{kstar_resolve, modify, self_intersections, ModificationSpec, Verdict};
use coxcalc::orbit::{enumerate_ffaces, orbit_cones_from_faces};
use serde_json::{json, Value};

use crate::json::{self, cone_text, face_names, vec_text};
use crate::schema::{Document, PresentationDoc, Ring};
use crate::CliError;

/// Options shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub chamber: Option<IntVec>,
    pub assert_k_prime: bool,
    pub guard: SizeGuard,
    /// Classes for `intersect`, as free parts.
    pub classes: Option<Vec<IntVec>>,
    /// Generators for `intersect`, by name.
    pub divisors: Option<Vec<String>>,
}

pub struct Output {
    pub json: Value,
    pub text: String,
}

fn ring_of(doc: &Document, opts: &Options) -> Result<Ring, CliError> {
    let mut ring = doc.ring()?;
    if opts.assert_k_prime {
        ring.pres.k_prime_asserted = true;
    }
    if opts.chamber.is_some() {
        ring.chamber = opts.chamber.clone();
    }
    Ok(ring)
}

/// The bunched ring of the document: given chamber, else the fan of the
/// document, else the first full dimensional GIT chamber in the moving cone.
pub fn bunched_ring(ring: &Ring, guard: &SizeGuard) -> Result<BunchedRing, CliError> {
    if let Some(w) = &ring.chamber {
        if w.len() != ring.pres.rank() {
            return Err(CliError::Math(Error::DimensionMismatch { expected: ring.pres.rank(), got: w.len() }));
        }
        return Ok(BunchedRing::from_weight(&ring.pres, w, guard)?);
    }
    if let Some(f) = &ring.fan {
        return Ok(bunched_ring_from_fan(&ring.pres, f, guard)?);
    }
    Ok(BunchedRing::from_weight(&ring.pres, &default_weight(&ring.pres, guard)?, guard)?)
}

pub fn default_weight(pres: &GradedPresentation, guard: &SizeGuard) -> Result<IntVec, CliError> {
    let mov = moving_cone(pres);
    let w = mov.interior_point();
    if !mov.is_full_dim() {
        return Ok(w);
    }
    let ffaces = enumerate_ffaces(pres, guard)?;
    let ocs = orbit_cones_from_faces(pres, &ffaces);
    guard.check_orbit_cones(ocs.len())?;
    if git_cone(&ocs, &w)?.is_full_dim() {
        return Ok(w);
    }
    let fan = enumerate_gitfan(&ocs)?;
    Ok(fan
        .chamber_cones()
        .into_iter()
        .find(|c| mov.contains_cone(c))
        .map(|c| c.interior_point())
        .unwrap_or(w))
}

fn header(ring: &Ring) -> (Value, String) {
    let pres = &ring.pres;
    let rels = pres.relation_display();
    let v = json!({
        "name": ring.name,
        "vars": pres.vars,
        "relations": rels,
        "Cl": json::group(&pres.group),
        "degrees": json::int_rows(&pres.degrees),
    });
    let mut t = String::new();
    if let Some(n) = &ring.name {
        t += &format!("{n}\n");
    }
    t += &format!("ring      K[{}]", pres.vars.join(","));
    if !rels.is_empty() {
        t += &format!(" / <{}>", rels.join(", "));
    }
    t += &format!("\ngraded by {}\n", pres.group);
    for (x, w) in pres.vars.iter().zip(&pres.degrees) {
        t += &format!("  deg {x} = {}\n", vec_text(w));
    }
    (v, t)
}

pub fn orbit_cones_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let ring = ring_of(doc, opts)?;
    let ffaces = enumerate_ffaces(&ring.pres, &opts.guard)?;
    let ocs = orbit_cones_from_faces(&ring.pres, &ffaces);
    let (mut v, mut t) = header(&ring);
    v["ffaces"] = json::faces(&ffaces);
    v["orbit_cones"] = Value::Array(
        ocs.cones
            .iter()
            .map(|o| {
                let mut c = json::cone(&o.cone);
                c["witnesses"] = json::faces(&o.witnesses);
                c
            })
            .collect(),
    );
    t += &format!("{} F-faces, {} orbit cones\n", ffaces.len(), ocs.len());
    for (i, o) in ocs.cones.iter().enumerate() {
        t += &format!("  [{i}] {}\n", cone_text(&o.cone));
    }
    Ok(Output { json: v, text: t })
}

pub fn gitfan_cmd(doc: &Document, opts: &Options) -> Result<(Output, coxcalc::gitfan::GitFan), CliError> {
    let ring = ring_of(doc, opts)?;
    let pres = &ring.pres;
    let ffaces = enumerate_ffaces(pres, &opts.guard)?;
    let ocs = orbit_cones_from_faces(pres, &ffaces);
    let fan = enumerate_gitfan(&ocs)?;
    fan.validate()?;
    let (mut v, mut t) = header(&ring);
    let mut cones = Vec::new();
    t += &format!("GIT fan: {} cones, {} chambers\n", fan.cones.len(), fan.chambers.len());
    for (i, gc) in fan.cones.iter().enumerate() {
        let ss = describe_semistable(pres, &semistable_pattern(pres, &ffaces, &gc.cone));
        let mut c = json::cone(&gc.cone);
        c["bunch"] = Value::from(gc.bunch.clone());
        c["semistable"] = Value::String(ss.clone());
        cones.push(c);
        t += &format!("  [{i}] {}  semistable: {ss}\n", cone_text(&gc.cone));
    }
    v["orbit_cones"] = Value::Array(ocs.cones.iter().map(|o| json::cone(&o.cone)).collect());
    v["cones"] = Value::Array(cones);
    v["chambers"] = Value::from(fan.chambers.clone());
    v["adjacency"] = Value::Array(fan.adjacency.iter().map(|&(a, b)| json!([a, b])).collect());
    v["moving_cone"] = json::cone(&moving_cone(pres));
    for (a, b) in &fan.adjacency {
        t += &format!("  chambers {a} and {b} share a wall\n");
    }
    Ok((Output { json: v, text: t }, fan))
}

pub fn bunches_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let ring = ring_of(doc, opts)?;
    let pres = &ring.pres;
    let ffaces = enumerate_ffaces(pres, &opts.guard)?;
    let ocs = orbit_cones_from_faces(pres, &ffaces);
    let bunches = enumerate_maximal_true_bunches(pres, &ocs, &ffaces, &opts.guard)?;
    let (mut v, mut t) = header(&ring);
    v["orbit_cones"] = Value::Array(ocs.cones.iter().map(|o| json::cone(&o.cone)).collect());
    t += &format!("{} maximal true bunches\n", bunches.len());
    let mut out = Vec::new();
    for (i, b) in bunches.iter().enumerate() {
        let minimal = b.minimal_members(&ocs);
        out.push(json!({
            "members": b.members,
            "minimal": minimal,
            "cov": json::faces(&b.cov),
        }));
        let mins: Vec<String> = minimal.iter().map(|&m| cone_text(ocs.cone(m))).collect();
        let cov: Vec<String> = b.cov.iter().map(|f| face_names(f, &pres.vars)).collect();
        t += &format!("  [{i}] {} members, minimal {}\n      cov {}\n", b.members.len(), mins.join(", "), cov.join(" "));
    }
    v["bunches"] = Value::Array(out);
    Ok(Output { json: v, text: t })
}

fn neg(v: &[num_bigint::BigInt]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

pub fn report_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let ring = ring_of(doc, opts)?;
    let br = bunched_ring(&ring, &opts.guard)?;
    let pres = &br.pres;
    let (mut v, mut t) = header(&ring);
    let lambda = br.minimal_cone();
    let dim = dimension(&br);
    v["dim"] = Value::from(dim);
    v["lambda"] = json::cone(&lambda);
    let minimal = br.bunch.minimal_members(&br.ocs);
    v["bunch"] = json!({
        "members": br.bunch.members,
        "minimal": minimal.iter().map(|&i| json::cone(br.ocs.cone(i))).collect::<Vec<_>>(),
        "cov": json::faces(&br.bunch.cov),
    });
    t += &format!("dimension {dim}\nchamber   {}\n", cone_text(&lambda));
    let cov: Vec<String> = br.bunch.cov.iter().map(|f| face_names(f, &pres.vars)).collect();
    t += &format!("cov       {}\n", cov.join(" "));

    let st = strata(&br)?;
    let mut sv = Vec::new();
    t += "singular strata\n";
    for s in &st {
        sv.push(json!({
            "face": json::face(&s.face),
            "local_class_group": json::group(&s.local_class_group),
            "factorial": s.factorial,
            "q_factorial": s.q_factorial,
            "total_space_smooth": s.total_space_smooth,
        }));
        if !s.factorial {
            t += &format!(
                "  {}: Cl = {}{}\n",
                face_names(&s.face, &pres.vars),
                s.local_class_group,
                if s.q_factorial { "" } else { ", not Q-factorial" }
            );
        }
    }
    if st.iter().all(|s| s.factorial) {
        t += "  none, locally factorial\n";
    }
    v["strata"] = Value::Array(sv);
    v["locally_factorial"] = Value::from(st.iter().all(|s| s.factorial));
    v["q_factorial"] = Value::from(st.iter().all(|s| s.q_factorial));

    let pic = picard(&br)?;
    v["picard"] = json!({
        "index": pic.index.as_ref().map(json::int),
        "lattice": json::int_rows(pic.lattice.basis()),
    });
    t += &format!(
        "Pic       index {}\n",
        pic.index.as_ref().map_or("infinite".to_string(), |i| i.to_string())
    );
    let cones = divisor_cones(&br);
    v["cones"] = json!({
        "effective": json::cone(&cones.effective),
        "movable": json::cone(&cones.movable),
        "semiample": json::cone(&cones.semiample),
        "ample_nonempty": cones.ample_nonempty,
    });
    t += &format!(
        "Eff       {}\nMov       {}\nSAmple    {}\nAmple     {}\n",
        cone_text(&cones.effective),
        cone_text(&cones.movable),
        cone_text(&cones.semiample),
        if cones.ample_nonempty { "interior of SAmple" } else { "empty" }
    );
    let kx = canonical_class(pres);
    v["canonical_class"] = json::ints(&kx);
    t += &format!("K_X       {}\n", vec_text(&kx));
    if let Some(ap) = &ring.ap {
        let k1 = canonical_class_complexity_one(ap, pres)?;
        v["canonical_class_complexity_one"] = json::ints(&k1);
    }
    let fg = fano_gorenstein(&br)?;
    v["fano"] = Value::from(fg.fano);
    v["gorenstein"] = Value::from(fg.gorenstein);
    t += &format!("fano      {}\ngorenstein {}\n", fg.fano, fg.gorenstein);
    if pres.group.is_torsion_free() && dim >= 0 && lambda.is_full_dim() {
        let anti = neg(&kx);
        let classes = vec![anti; dim as usize];
        let mut form = IntersectionForm::new(&br, None)?;
        let deg = form.number(&classes)?;
        v["anticanonical_degree"] = json::rat(&deg);
        t += &format!("(-K)^{dim}    {deg}\n");
    }
    if pres.group.rank == 1 && pres.group.torsion.is_empty() {
        let r1 = picard_data_rank_one(&br)?;
        v["rank_one"] = json!({
            "picard_index": json::int(&r1.picard_index),
            "anticanonical_degree": json::rat(&r1.anticanonical_degree),
            "fano": r1.fano,
        });
    }
    let fan = match (&ring.fan, &ring.p) {
        (Some(f), _) => f.clone(),
        (None, Some(p)) => canonical_toric_ambient_with(&br, p)?,
        (None, None) => canonical_toric_ambient(&br)?,
    };
    v["ambient_fan"] = json::fan(&fan);
    v["certificate"] = json!({
        "almost_free": br.certificate.almost_free,
        "facets_are_ffaces": br.certificate.facets_are_ffaces,
        "k_prime_asserted": br.certificate.k_prime_asserted,
    });
    if !br.certificate.k_prime_asserted {
        t += "note      K-primality of the generators was not asserted\n";
    }
    Ok(Output { json: v, text: t })
}

pub fn intersect_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let ring = ring_of(doc, opts)?;
    let br = bunched_ring(&ring, &opts.guard)?;
    let pres = &br.pres;
    let mut form = IntersectionForm::new(&br, None)?;
    let dim = form.dim();
    let (mut v, mut t) = header(&ring);
    v["dim"] = Value::from(dim);
    if let Some(classes) = &opts.classes {
        let x = form.number(classes)?;
        v["classes"] = json::int_rows(classes);
        v["value"] = json::rat(&x);
        let shown: Vec<String> = classes.iter().map(|c| vec_text(c)).collect();
        t += &format!("{} = {x}\n", shown.join(" . "));
    } else if let Some(names) = &opts.divisors {
        let idx = names
            .iter()
            .map(|n| pres.vars.iter().position(|x| x == n).ok_or_else(|| CliError::Schema(format!("unknown variable {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let x = form.divisors(&idx)?;
        v["divisors"] = Value::from(names.clone());
        v["value"] = json::rat(&x);
        t += &format!("{} = {x}\n", names.iter().map(|n| format!("D_{n}")).collect::<Vec<_>>().join(" . "));
    } else {
        let anti = neg(&canonical_class(pres));
        let deg = form.number(&vec![anti; dim])?;
        v["anticanonical_degree"] = json::rat(&deg);
        t += &format!("(-K)^{dim} = {deg}\n");
        if dim == 2 {
            let n = pres.nvars();
            let mut m: Vec<Vec<Rat>> = vec![Vec::new(); n];
            for (i, row) in m.iter_mut().enumerate() {
                for j in 0..n {
                    row.push(form.divisors(&[i, j])?);
                }
            }
            v["matrix"] = Value::Array(m.iter().map(|r| Value::Array(r.iter().map(json::rat).collect())).collect());
            t += "D_i . D_j\n";
            for (x, row) in pres.vars.iter().zip(&m) {
                let cells: Vec<String> = row.iter().map(|q| format!("{q:>6}")).collect();
                t += &format!("  {x:>4} {}\n", cells.join(""));
            }
        }
    }
    Ok(Output { json: v, text: t })
}

pub fn modify_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let Document::Modification(m) = doc else {
        return Err(CliError::Schema(format!("modify expects a modification document, got {}", doc.kind())));
    };
    let mut pres = m.base.to_presentation()?;
    pres.k_prime_asserted |= opts.assert_k_prime;
    let p = m.p_matrix()?;
    let fan = Fan::new(p.to_cols(), m.max_cones.clone())?;
    let spec = ModificationSpec::new(m.center_indices()?, m.coefficient_values())?;
    let new_var = m.new_var.clone().unwrap_or_else(|| "Tinf".to_string());
    if pres.vars.contains(&new_var) {
        return Err(CliError::Schema(format!("variable {new_var} already exists")));
    }
    let out = modify(&pres, &p, &fan, &spec, m.assume_admissible, &new_var)?;
    let np = &out.presentation;
    let mut doc_out = PresentationDoc::from_presentation(np);
    doc_out.name = m.name.clone();
    let mut v = json!({
        "inserted": out.inserted,
        "ray": json::ints(&out.ray),
        "m_infinity": json::int(&out.m_infinity),
        "vars": np.vars,
        "relations": np.relation_display(),
        "Cl": json::group(&np.group),
        "degrees": json::int_rows(&np.degrees),
        "P": json::matrix(&out.p),
        "fan": json::fan(&out.fan),
        "result": serde_json::to_value(Document::Presentation(doc_out)).expect("documents serialize"),
    });
    let mut t = String::new();
    if !out.inserted {
        t += &format!("ray {} is already in the fan, nothing to do\n", vec_text(&out.ray));
    } else {
        t += &format!("inserted ray {} (m = {})\n", vec_text(&out.ray), out.m_infinity);
    }
    if let Some(c) = &out.certificate {
        let verdict = match &c.verdict {
            Verdict::Admissible => "admissible".to_string(),
            Verdict::NotAdmissible(w) => format!("not admissible: {w}"),
            Verdict::Unverified(w) => format!("assumed admissible: {w}"),
        };
        v["admissibility"] = json!({
            "verdict": verdict,
            "k0": json::int(&c.k0),
            "g_k0": c.g_k0.display_with(&pres.vars).to_string(),
            "orbit_meets": c.orbit_meets,
        });
        t += &format!("{verdict}, lowest part {}\n", c.g_k0.display_with(&pres.vars));
    }
    t += &format!("relation  {}\ngraded by {}\n", np.relation_display().join(", "), np.group);
    for (x, w) in np.vars.iter().zip(&np.degrees) {
        t += &format!("  deg {x} = {}\n", vec_text(w));
    }
    Ok(Output { json: v, text: t })
}

pub fn kstar_resolve_cmd(doc: &Document, opts: &Options) -> Result<Output, CliError> {
    let ring = ring_of(doc, opts)?;
    let ap = match &ring.ap {
        Some(ap) => ap.clone(),
        None => recognize_complexity_one(&ring.pres)?.0,
    };
    let res = kstar_resolve(&ap)?;
    let ex = self_intersections(&res, &opts.guard)?;
    let minimal = ex.contract_minus_one_curves();
    let pres = &res.presentation;
    let mut t = format!("{} resolution steps\n", res.steps.len());
    let steps: Vec<Value> = res
        .steps
        .iter()
        .map(|s| {
            t += &format!(
                "  insert {} {}{}\n",
                vec_text(&s.inserted),
                s.arm.map_or("as parabolic curve".to_string(), |a| format!("into arm {a}")),
                if s.cross_checked { ", reproduced by a modification" } else { "" }
            );
            json!({
                "inserted": json::ints(&s.inserted),
                "arm": s.arm,
                "column": s.column,
                "relations": s.presentation.relation_display(),
                "cross_checked": s.cross_checked,
            })
        })
        .collect();
    t += &format!("relation  {}\ngraded by {}\n", pres.relation_display().join(", "), pres.group);
    t += &format!("exceptional curves {}\n", ex.names.join(" "));
    for (x, row) in ex.names.iter().zip(&ex.matrix) {
        let cells: Vec<String> = row.iter().map(|q| format!("{q:>4}")).collect();
        t += &format!("  {x:>4} {}\n", cells.join(""));
    }
    t += &format!("minimal   {}\n", minimal.names.join(" "));
    t += &format!("type      {}\n", ade_text(&minimal.label));
    let v = json!({
        "steps": steps,
        "vars": pres.vars,
        "relations": pres.relation_display(),
        "Cl": json::group(&pres.group),
        "degrees": json::int_rows(&pres.degrees),
        "P": json::matrix(&res.resolved.p_matrix()),
        "fan": json::fan(&res.fan),
        "exceptional": ex.names,
        "intersection_matrix": ex.matrix.iter().map(|r| Value::Array(r.iter().map(json::rat).collect())).collect::<Vec<_>>(),
        "minimal_resolution": {
            "exceptional": minimal.names,
            "intersection_matrix": minimal.matrix.iter().map(|r| Value::Array(r.iter().map(json::rat).collect())).collect::<Vec<_>>(),
        },
        "ade_type": minimal.label,
    });
    Ok(Output { json: v, text: t })
}

/// Checks that every relation of the ring is homogeneous.
pub fn homogeneous(pres: &GradedPresentation) -> Result<bool, CliError> {
    for g in &pres.relations {
        if !pres.is_homogeneous(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}


pub fn ade_text(label: &Option<String>) -> &str {
    match label.as_deref() {
        None => "not ADE",
        Some("") => "smooth",
        Some(l) => l,
    }
}
