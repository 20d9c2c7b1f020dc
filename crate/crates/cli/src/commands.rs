use std::path::{Path, PathBuf};

use hkdiag::annulus::{
    derived_facts, is_fourone, known_knots, symmetry_bounds, validate_labels, AnnulusDiagram,
    SymmetryError,
};
use hkdiag::diagram::{
    ablation, canonical_form, enumerate_with, ibundle_base, raw_type, realization,
    validate as check_constraints, write_diagram, CharDiagram, Constraint, ConstraintSet,
    Realization,
};
use hkdiag::exec::{filter_map, with_jobs, Strategy};
use hkdiag::homology::{h1_complement, subgroup_index, MarkedLoop};
use hkdiag::spatial::{
    classify_atoroidal, component_knot, constituent_links, double_loop, family_odd_ringed,
    family_ringed_looped, family_torus_link, family_torus_looped, five_two_spine, linking_number,
    loop_at, looping_kind, looping_transition, loopings, predicted_annulus, validate_code,
    write_code, Certificate, EdgeEnd, FactSet, FamilyError, GraphClass, GraphKind, LoopError,
    LoopOptions, LoopingKind, Provenance, Ring, SpatialGraphCode,
};

use crate::input::{load, load_code, read_code, Input};
use crate::report::{Report, Section, Tag};
use crate::{
    AnalyzeArgs, Failure, FamilyArgs, FamilyName, Format, KindArg, LoopArgs, Output, RingArg,
};

pub struct Context {
    pub format: Format,
    pub mirror: bool,
    pub jobs: Option<usize>,
}

fn subject(path: &Path) -> String {
    path.display().to_string()
}

/// Runs `f` on every file, in parallel when `--jobs` allows it. Reports keep
/// the input order; the first input error aborts the run.
pub fn batch(
    ctx: &Context,
    files: &[PathBuf],
    f: fn(&Path, Input) -> Result<Report, Failure>,
) -> Result<Output, Failure> {
    if files.is_empty() {
        return Err(Failure::usage("no input files"));
    }
    let results = with_jobs(ctx.jobs, || {
        filter_map(files, Strategy::default(), |p| {
            Some(load(p).and_then(|i| f(p, i)))
        })
    });
    results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map(Output::Reports)
}

pub fn enumerate(
    ctx: &Context,
    without: Option<&str>,
    sequential: bool,
) -> Result<Output, Failure> {
    let strategy = if sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    let (title, diagrams) = match without {
        None => (
            "valid characteristic diagrams".to_string(),
            with_jobs(ctx.jobs, || enumerate_with(ConstraintSet::all(), strategy)),
        ),
        Some(code) => {
            let c = Constraint::from_code(code).ok_or_else(|| {
                let all: Vec<&str> = Constraint::ALL.iter().map(|c| c.code()).collect();
                Failure::usage(format!(
                    "unknown constraint `{code}` (expected one of {})",
                    all.join(", ")
                ))
            })?;
            (
                format!("classes admitted only when {} is disabled", c.code()),
                with_jobs(ctx.jobs, || ablation(c, strategy)),
            )
        }
    };
    let mut r = Report::new(format!("enumerate: {title} ({})", diagrams.len()));
    for d in &diagrams {
        r.section(diagram_section(d));
    }
    Ok(Output::Reports(vec![r]))
}

fn diagram_section(d: &CharDiagram) -> Section {
    // Ablation output includes diagrams that fail the full constraint set.
    let t = raw_type(d);
    let mut s = Section::new(t.symbolic());
    s.push("type", t, Tag::Computed);
    s.push("canonical", canonical_form(d).to_hex(), Tag::Computed);
    s.push(
        "diagram",
        write_diagram(d).trim_end().replace('\n', "; "),
        Tag::Computed,
    );
    let violated: Vec<&str> = check_constraints(d)
        .iter()
        .map(|v| v.constraint.code())
        .collect();
    let status = match realization(&t) {
        _ if !violated.is_empty() => format!("impossible (violates {})", violated.join(", ")),
        Realization::Known => "known".to_string(),
        Realization::Unknown => "unknown".to_string(),
    };
    s.push("realization", status, Tag::PaperRule);
    if let Some(b) = ibundle_base(d) {
        s.push("labeled node", b, Tag::PaperRule);
    }
    s
}

fn constraint_section(d: &CharDiagram) -> (Section, bool) {
    let mut s = Section::new("constraints");
    let violations = check_constraints(d);
    for v in &violations {
        s.push(v.constraint.code(), &v.detail, Tag::PaperRule);
    }
    if violations.is_empty() {
        s.push("status", "valid", Tag::PaperRule);
    }
    (s, !violations.is_empty())
}

fn label_section(ad: &AnnulusDiagram) -> (Section, bool) {
    let mut s = Section::new("labels");
    match validate_labels(ad) {
        Ok(vs) if vs.is_empty() => {
            s.push("status", "consistent", Tag::PaperRule);
            (s, false)
        }
        Ok(vs) => {
            for v in vs {
                s.push(v.rule.code(), v.detail, Tag::PaperRule);
            }
            (s, true)
        }
        Err(_) => {
            s.push(
                "status",
                "not checked: base diagram is invalid",
                Tag::PaperRule,
            );
            (s, true)
        }
    }
}

pub fn validate(path: &Path, input: Input) -> Result<Report, Failure> {
    let mut r = Report::new(subject(path));
    match input {
        Input::Diagram(d) => {
            let (s, bad) = constraint_section(&d);
            r.section(s);
            r.failed = bad;
        }
        Input::Annulus(ad) => {
            let (s, bad_base) = constraint_section(ad.base());
            r.section(s);
            let (s, bad_labels) = label_section(&ad);
            r.section(s);
            r.failed = bad_base || bad_labels;
        }
        Input::Code(g) => {
            let mut s = Section::new("code");
            let vs = validate_code(&g);
            for v in &vs {
                s.push("violation", v, Tag::Computed);
            }
            if vs.is_empty() {
                s.push("status", "valid", Tag::Computed);
            }
            r.failed = !vs.is_empty();
            r.section(s);
        }
    }
    Ok(r)
}

pub fn classify(path: &Path, input: Input) -> Result<Report, Failure> {
    let mut r = Report::new(subject(path));
    match input {
        Input::Diagram(d) => {
            let (s, bad) = constraint_section(&d);
            if bad {
                r.section(s);
                r.failed = true;
            } else {
                r.section(diagram_section(&d));
            }
        }
        Input::Annulus(ad) => {
            let (s, bad) = constraint_section(ad.base());
            if bad {
                r.section(s);
                r.failed = true;
                return Ok(r);
            }
            let (labels, bad) = label_section(&ad);
            if bad {
                r.section(labels);
                r.failed = true;
                return Ok(r);
            }
            let t = ad.diagram_type().expect("base checked");
            let verdict = if is_fourone(&ad).expect("base checked") {
                "equivalent to 4_1"
            } else {
                "not equivalent to 4_1"
            };
            let mut head = Section::new("classification");
            head.push("summary", format!("{t}; {verdict}"), Tag::PaperRule);
            head.push("type", t, Tag::Computed);
            head.push(
                "labels",
                ad.summary().split_once(' ').map_or("", |x| x.1),
                Tag::Asserted,
            );
            head.push("4_1", verdict, Tag::PaperRule);
            r.section(head);
            r.section(labels);
            let mut s = Section::new("derived facts");
            for f in derived_facts(&ad).expect("base checked") {
                s.push_from("fact", f.statement, Tag::PaperRule, &f.rule);
            }
            r.section(s);
        }
        Input::Code(_) => {
            return Err(Failure::usage(format!(
                "{}: graph codes are classified by `hkdiag analyze`",
                path.display()
            )))
        }
    }
    Ok(r)
}

pub fn symmetry(path: &Path, input: Input) -> Result<Report, Failure> {
    let Input::Annulus(ad) = input else {
        return Err(Failure::usage(format!(
            "{}: expected an annulus diagram",
            path.display()
        )));
    };
    let mut r = Report::new(subject(path));
    let mut s = Section::new("symmetry bounds");
    match symmetry_bounds(&ad) {
        Ok(b) => {
            s.push("Sym+", b.sym_plus, Tag::PaperRule);
            s.push("Sym", b.sym, Tag::PaperRule);
            s.push("exact", b.exact, Tag::PaperRule);
            if is_fourone(&ad).unwrap_or(false) {
                s.push("4_1", "equivalent to 4_1", Tag::PaperRule);
            }
            r.section(s);
            let kf = ad.kind_form();
            let mut known = Section::new("known handlebody-knots with this diagram");
            for k in known_knots() {
                if k.diagram.as_ref().is_some_and(|d| d.kind_form() == kf) {
                    let ok = b.admits(k.sym_plus, k.sym);
                    known.push(
                        k.name,
                        format!(
                            "Sym+ {}, Sym {}: {}",
                            k.sym_plus,
                            k.sym,
                            if ok { "consistent" } else { "inconsistent" }
                        ),
                        Tag::PaperRule,
                    );
                }
            }
            if !known.facts.is_empty() {
                r.section(known);
            }
        }
        Err(SymmetryError::Invalid(e)) => {
            s.push("status", e, Tag::PaperRule);
            r.section(s);
            r.failed = true;
        }
        Err(e) => {
            s.push("status", e, Tag::PaperRule);
            r.section(s);
            r.failed = true;
        }
    }
    Ok(r)
}

fn parse_end(s: &str) -> Result<EdgeEnd, Failure> {
    let bad = || {
        Failure::usage(format!(
            "bad edge end `{s}` (expected <edge>.0 or <edge>.1)"
        ))
    };
    let (edge, end) = s.rsplit_once('.').ok_or_else(bad)?;
    match end {
        "0" | "1" if !edge.is_empty() => Ok(EdgeEnd::new(edge, end.parse().unwrap())),
        _ => Err(bad()),
    }
}

fn facts_from(asserts: &[String]) -> Result<FactSet, Failure> {
    FactSet::from_assertions(asserts).map_err(|e| Failure::usage(e.to_string()))
}

fn loop_failure(e: LoopError) -> Failure {
    match e {
        LoopError::Disconnect(_) => Failure::domain(format!(
            "{e}; a looping must leave the spatial graph connected"
        )),
        other => Failure::usage(other.to_string()),
    }
}

fn emit_code(
    ctx: &Context,
    g: &SpatialGraphCode,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(g).expect("code serializes") + "\n",
        Format::Text => write_code(g),
    };
    let back = read_code(Path::new("<output>"), &text)?;
    if &back != g {
        return Err(Failure::domain(
            "internal error: written code does not read back",
        ));
    }
    match output {
        Some(p) => {
            std::fs::write(p, &text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(Output::Raw(String::new()))
        }
        None => Ok(Output::Raw(text)),
    }
}

pub fn looping(ctx: &Context, args: &LoopArgs) -> Result<Output, Failure> {
    let g = load_code(&args.file)?;
    let [a, b] = &args.pair[..] else {
        return Err(Failure::usage("--pair takes exactly two edge ends"));
    };
    let (a, b) = (parse_end(a)?, parse_end(b)?);
    let facts = facts_from(&args.asserts)?;
    let kind = match args.kind {
        Some(KindArg::Tunnel) => LoopingKind::Tunnel,
        Some(KindArg::Knot) => LoopingKind::Knot,
        Some(KindArg::Plain) => LoopingKind::Plain,
        None => looping_kind(&g, &facts, [&a, &b]),
    };
    let opts = LoopOptions {
        mirror: ctx.mirror,
        kind: Some(kind),
    };
    let out = if args.double {
        double_loop(&g, &args.vertex, [&a, &b], opts)
    } else {
        loop_at(&g, &args.vertex, [&a, &b], opts)
    }
    .map_err(loop_failure)?;
    emit_code(ctx, &out, args.output.as_deref())
}

fn family_failure(e: FamilyError) -> Failure {
    Failure::usage(e.to_string())
}

pub fn family(ctx: &Context, args: &FamilyArgs) -> Result<Output, Failure> {
    let ring = match args.ring {
        RingArg::One => Ring::One,
        RingArg::Both => Ring::Both,
    };
    let g = match args.name {
        FamilyName::TorusLink => family_torus_link(args.n, args.tunnel),
        FamilyName::TorusLooped => family_torus_looped(args.n),
        FamilyName::Ringed => family_odd_ringed(args.n, ring),
        FamilyName::RingedLooped => family_ringed_looped(args.n, ring),
        FamilyName::FiveTwo => five_two_spine(),
    }
    .map_err(family_failure)?;
    let g = if ctx.mirror { g.mirror() } else { g };
    emit_code(ctx, &g, args.output.as_deref())
}

/// Two-component constituent links of a code, with their names.
fn two_component_links(g: &SpatialGraphCode) -> Result<Vec<(String, SpatialGraphCode)>, Failure> {
    let cs = constituent_links(g).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(cs
        .into_iter()
        .filter(|c| c.code.components().len() >= 2)
        .map(|c| (c.name, c.code))
        .collect())
}

pub fn linking(file: &Path, components: &[String]) -> Result<Output, Failure> {
    let g = load_code(file)?;
    let links = two_component_links(&g)?;
    let mut r = Report::new(subject(file));
    let mut s = Section::new("linking numbers");
    match components {
        [] => {
            for (_, link) in &links {
                let ids = link.components();
                for i in 0..ids.len() {
                    for j in i + 1..ids.len() {
                        let lk = linking_number(link, ids[i], ids[j])
                            .map_err(|e| Failure::domain(e.to_string()))?;
                        s.push(format!("lk({},{})", ids[i], ids[j]), lk, Tag::Computed);
                    }
                }
            }
        }
        [a, b] => {
            let link = links
                .iter()
                .map(|(_, l)| l)
                .find(|l| {
                    let ids = l.components();
                    ids.contains(&a.as_str()) && ids.contains(&b.as_str())
                })
                .ok_or_else(|| {
                    Failure::usage(format!(
                        "no constituent link has components `{a}` and `{b}`"
                    ))
                })?;
            let lk = linking_number(link, a, b).map_err(|e| Failure::usage(e.to_string()))?;
            s.push(format!("lk({a},{b})"), lk, Tag::Computed);
        }
        _ => return Err(Failure::usage("--components takes exactly two ids")),
    }
    if s.facts.is_empty() {
        s.push(
            "status",
            "no constituent link with two components",
            Tag::Computed,
        );
    }
    r.section(s);
    Ok(Output::Reports(vec![r]))
}

fn tag_of(p: &Provenance) -> (Tag, Option<String>) {
    match p {
        Provenance::User => (Tag::Asserted, None),
        Provenance::Computed(o) => (Tag::Computed, Some(o.clone())),
    }
}

fn facts_section(facts: &FactSet, title: &str) -> Section {
    let mut s = Section::new(title);
    for (k, v, p) in facts.rows() {
        match tag_of(&p) {
            (tag, Some(src)) => s.push_from(k, v, tag, &src),
            (tag, None) => s.push(k, v, tag),
        };
    }
    s
}

fn certificate_section(certs: &[Certificate]) -> Section {
    let mut s = Section::new("certificates");
    for c in certs {
        s.push_from(&c.subject, &c.value, Tag::Computed, &c.oracle);
    }
    s
}

fn homology_section(g: &SpatialGraphCode) -> Section {
    let mut s = Section::new("homology");
    let h = match h1_complement(g) {
        Ok(h) => h,
        Err(e) => {
            s.push("status", e, Tag::Computed);
            return s;
        }
    };
    s.push("H1 of complement", h.group(), Tag::Computed);
    let mut classes = Vec::new();
    for e in &g.edges {
        if let Ok(c) = h.class_of(&MarkedLoop::meridian(format!("m_{}", e.id), &e.id)) {
            s.push(format!("[m_{}]", e.id), &c, Tag::Computed);
            classes.push((e.clone(), c));
        }
    }
    // Meridians of the loops (handcuff) or of two edges (θ) span H1.
    let chosen: Vec<_> = match g.kind {
        GraphKind::Handcuff => classes
            .iter()
            .filter(|(e, _)| e.is_loop())
            .map(|(_, c)| c.clone())
            .collect(),
        GraphKind::Theta => classes.iter().take(2).map(|(_, c)| c.clone()).collect(),
        GraphKind::Link => classes.iter().map(|(_, c)| c.clone()).collect(),
    };
    if !chosen.is_empty() {
        let names: Vec<String> = match g.kind {
            GraphKind::Handcuff => classes
                .iter()
                .filter(|(e, _)| e.is_loop())
                .map(|(e, _)| format!("m_{}", e.id))
                .collect(),
            GraphKind::Theta => classes
                .iter()
                .take(2)
                .map(|(e, _)| format!("m_{}", e.id))
                .collect(),
            GraphKind::Link => classes.iter().map(|(e, _)| format!("m_{}", e.id)).collect(),
        };
        if let Ok(ix) = subgroup_index(&chosen) {
            s.push(
                format!("index of <{}>", names.join(", ")),
                ix,
                Tag::Computed,
            );
        }
    }
    s
}

fn constituents_section(g: &SpatialGraphCode) -> Section {
    let mut s = Section::new("constituents");
    let Ok(cs) = constituent_links(g) else {
        return s;
    };
    for c in cs {
        let ids = c.code.components();
        if ids.len() == 1 {
            if let Ok(p) = hkdiag::homology::alexander_polynomial(&c.code) {
                s.push_from(
                    format!("{} Alexander", c.name),
                    p,
                    Tag::Computed,
                    "alexander",
                );
            }
        } else {
            for id in &ids {
                let knot = component_knot(&c.code, id).ok();
                if let Some(p) = knot.and_then(|k| hkdiag::homology::alexander_polynomial(&k).ok())
                {
                    s.push_from(format!("{id} Alexander"), p, Tag::Computed, "alexander");
                }
            }
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    if let Ok(lk) = linking_number(&c.code, ids[i], ids[j]) {
                        s.push_from(
                            format!("lk({},{})", ids[i], ids[j]),
                            lk,
                            Tag::Computed,
                            "linking-number",
                        );
                    }
                }
            }
        }
    }
    s
}

fn class_section(
    g: &SpatialGraphCode,
    facts: &FactSet,
    title: &str,
) -> Result<(Section, Option<GraphClass>), Failure> {
    let mut s = Section::new(title);
    let class = classify_atoroidal(g, facts).map_err(|e| Failure::domain(e.to_string()))?;
    s.push("class", &class, Tag::PaperRule);
    let known = match &class {
        GraphClass::Unclassified(_) => None,
        c => Some(c.clone()),
    };
    Ok((s, known))
}

fn prediction_facts(s: &mut Section, p: &hkdiag::spatial::AnnulusPrediction) {
    let show = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
    let annuli: Vec<String> = p.annuli.iter().map(ToString::to_string).collect();
    s.push("canonical annuli", annuli.join(", "), Tag::PaperRule);
    s.push("unique", show(p.unique), Tag::PaperRule);
    s.push("unknotting", show(p.unknotting), Tag::PaperRule);
    s.push(
        "irreducible and atoroidal",
        show(p.irreducible_atoroidal),
        Tag::PaperRule,
    );
    if p.diagrams.is_empty() {
        s.push("annulus diagram", "not determined", Tag::PaperRule);
    }
    for d in &p.diagrams {
        s.push("annulus diagram", d, Tag::PaperRule);
    }
    for n in &p.notes {
        s.push("note", n, Tag::PaperRule);
    }
}

fn analyze_one(
    ctx: &Context,
    path: &Path,
    args: &AnalyzeArgs,
    source: Option<&SpatialGraphCode>,
) -> Result<Report, Failure> {
    let g = load_code(path)?;
    let mut r = Report::new(subject(path));
    let vs = validate_code(&g);
    if let Some(v) = vs.first() {
        return Err(Failure::usage(format!("{}: {v}", path.display())));
    }
    let mut head = Section::new("graph");
    head.push("kind", g.kind, Tag::Computed);
    head.push("crossings", g.crossing_count(), Tag::Computed);
    if let Some(o) = &g.origin {
        head.push("looped from", o.source, Tag::Asserted);
        for st in &o.steps {
            head.push(
                "step",
                format!("{} {} {} ({})", st.vertex, st.pair[0], st.pair[1], st.kind),
                Tag::Asserted,
            );
        }
    }
    r.section(head);
    r.section(constituents_section(&g));
    r.section(homology_section(&g));

    // Facts describe the source graph for a looped input, the input itself
    // otherwise.
    let mut facts = facts_from(&args.asserts)?;
    let certified = match (&g.origin, source) {
        (Some(_), Some(src)) => Some(src),
        (Some(_), None) => None,
        (None, _) => Some(&g),
    };
    if let Some(target) = certified {
        match facts.certify(target) {
            Ok(certs) => r.section(certificate_section(&certs)),
            Err(e) => {
                let mut s = Section::new("certificates");
                s.push("contradiction", e, Tag::Computed);
                r.section(s);
                r.failed = true;
                return Ok(r);
            }
        }
    }
    r.section(facts_section(
        &facts,
        if g.origin.is_some() {
            "facts (source graph)"
        } else {
            "facts"
        },
    ));

    match &g.origin {
        Some(origin) => {
            if let Some(src) = source {
                let (s, _) = class_section(src, &facts, "source classification")?;
                r.section(s);
            }
            let p = predicted_annulus(Some(origin), source, &facts)
                .map_err(|e| Failure::domain(e.to_string()))?;
            let mut s = Section::new("prediction");
            prediction_facts(&mut s, &p);
            r.section(s);
        }
        None if g.kind != GraphKind::Link => {
            let (s, class) = class_section(&g, &facts, "classification")?;
            r.section(s);
            for (v, pair) in loopings(&g) {
                let kind = looping_kind(&g, &facts, [&pair[0], &pair[1]]);
                let mut s = Section::new(format!("looping at {v}: {} {}", pair[0], pair[1]));
                s.push("kind", kind, Tag::PaperRule);
                if let Some(c) = &class {
                    let t = looping_transition(c, kind);
                    let to: Vec<String> = t.to.iter().map(ToString::to_string).collect();
                    let mut value = format!("{} -> {}", t.from, to.join(" or "));
                    if let Some(n) = &t.note {
                        value.push_str(&format!(" ({n})"));
                    }
                    s.push("transition", value, Tag::PaperRule);
                }
                let opts = LoopOptions {
                    mirror: ctx.mirror,
                    kind: Some(kind),
                };
                match loop_at(&g, &v, [&pair[0], &pair[1]], opts) {
                    Ok(looped) => {
                        let p = predicted_annulus(looped.origin.as_ref(), Some(&g), &facts)
                            .map_err(|e| Failure::domain(e.to_string()))?;
                        prediction_facts(&mut s, &p);
                    }
                    Err(e) => {
                        s.push("status", e, Tag::Computed);
                    }
                }
                r.section(s);
            }
        }
        None => {}
    }
    Ok(r)
}

pub fn analyze(ctx: &Context, args: &AnalyzeArgs) -> Result<Output, Failure> {
    if args.files.is_empty() {
        return Err(Failure::usage("no input files"));
    }
    let source = args.source.as_deref().map(load_code).transpose()?;
    let results = with_jobs(ctx.jobs, || {
        filter_map(&args.files, Strategy::default(), |p| {
            Some(analyze_one(ctx, p, args, source.as_ref()))
        })
    });
    results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map(Output::Reports)
}
