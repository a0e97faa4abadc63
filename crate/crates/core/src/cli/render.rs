//! Text and DOT renderings of a [`Report`].

use std::collections::BTreeMap;
use std::fmt::Write;

use super::config::Format;
use super::report::{PageSet, Report, Status};

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Json => report.to_json(),
        Format::Dot => render_dot(report),
    }
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn pages_text(s: &mut String, ps: &PageSet) {
    let _ = writeln!(s, "  level weights a = ({})", list(&ps.weights));
    let ks: Vec<String> = ps.k.iter().map(|(n, k)| format!("{n}:{k}")).collect();
    let _ = writeln!(s, "  k(n): {}", ks.join(" "));
    let mut by: BTreeMap<(i64, &str), Vec<String>> = BTreeMap::new();
    for e in &ps.entries {
        by.entry((e.n, e.k.as_str())).or_default().push(format!("(d={},b={}):{}", e.d, e.b, e.rank));
    }
    for ((n, k), v) in by {
        let _ = writeln!(s, "  n={n} E^{k}: {}", v.join(" "));
    }
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let c = &r.curve;
    let _ = writeln!(s, "curve: {} r={} c=({}) delta={}", c.kind, c.arity, list(&c.conductor), c.delta);
    let _ = writeln!(s, "  gorenstein={} plane={} route={:?}", c.gorenstein, c.plane, c.route);
    let elems: Vec<String> = c.semigroup.iter().map(|l| format!("({})", list(l))).collect();
    let _ = writeln!(s, "  S in R(0,c): {}", elems.join(" "));
    let _ = writeln!(
        s,
        "run: n_max={} min_weight={} rectangle=R(0,({}))",
        r.run.n_max,
        r.run.min_weight,
        list(&r.run.working_rectangle)
    );
    if let Some(h) = &r.hilbert {
        let _ = writeln!(s, "hilbert:");
        for row in &h.rows {
            let _ = writeln!(s, "  l=({}) h={} w={}", list(&row.l), row.h, row.w);
        }
    }
    if let Some(h) = &r.homology {
        let _ = writeln!(s, "homology: stabilized={}", h.stabilized);
        for (b, m) in h.modules.iter().enumerate() {
            let _ = writeln!(s, "  H_{b} = {m}");
        }
        let _ = writeln!(
            s,
            "  euler: cubes={} homology={} delta={}",
            h.euler.cube_sum, h.euler.from_homology, h.euler.delta
        );
        let hat: Vec<String> = h.hat.iter().map(|e| format!("(n={},b={}):{}", e.n, e.b, e.group.rank)).collect();
        let _ = writeln!(s, "  hat: {} euler={}", hat.join(" "), h.hat_euler);
        if let Some(red) = &h.reduced {
            let v: Vec<String> = red.iter().enumerate().map(|(b, m)| format!("H_{b} = {m}")).collect();
            let _ = writeln!(s, "  reduced: {}", v.join("; "));
        }
        if let Some(k) = &h.kunneth {
            let v: Vec<String> = k.iter().enumerate().map(|(b, m)| format!("H_{b} = {m}")).collect();
            let _ = writeln!(s, "  kunneth: {}", v.join("; "));
        }
    }
    if let Some(root) = &r.root {
        let counts: Vec<String> = root.components.iter().map(|(n, k)| format!("{n}:{k}")).collect();
        let _ = writeln!(s, "graded root: components {}", counts.join(" "));
        for d in &root.decorations {
            let _ = writeln!(s, "  v(n={},#{}) PE1={} PE_inf={} k={}", d.n, d.index, d.pe1, d.pe_inf, d.k);
        }
    }
    if let Some(p) = &r.pages {
        let _ = writeln!(s, "pages:");
        pages_text(&mut s, &p.default);
        if let Some(w) = &p.weighted {
            let _ = writeln!(s, "weighted pages:");
            pages_text(&mut s, w);
        }
    }
    if let Some(pe) = &r.pe {
        let _ = writeln!(s, "PE series:");
        for x in &pe.series {
            let _ = writeln!(s, "  PE_{} = {}", x.k, x.rational);
        }
    }
    if let Some(b) = &r.bold_pe {
        let _ = writeln!(s, "bold PE_1 on R(0,({})): {}", list(&b.box_hi), b.rational);
    }
    if let Some(m) = &r.motivic {
        let _ = writeln!(s, "motivic P^m = {}", m.rational);
    }
    if let Some(h) = &r.hfl {
        let _ = writeln!(s, "{}:", h.meaning);
        for e in &h.entries {
            let _ = writeln!(s, "  l=({}) degree {}: rank {}", list(&e.l), e.maslov, e.rank);
        }
    }
    if let Some(y) = &r.y_ops {
        let g: Vec<String> = y
            .generators
            .iter()
            .filter(|g| g.generators > 0)
            .map(|g| format!("(l=({}),b={}):{}", list(&g.l), g.b, g.generators))
            .collect();
        let _ = writeln!(s, "Y-module generators: {}", g.join(" "));
        if let Some(ch) = &y.chains {
            let _ = writeln!(s, "Y-chains: {}", ch.join(" "));
        }
    }
    let _ = writeln!(s, "checks:");
    for ch in &r.checks {
        let tag = match ch.status {
            Status::Pass => "ok  ",
            Status::Warn => "warn",
            Status::Fail => "FAIL",
        };
        if ch.detail.is_empty() {
            let _ = writeln!(s, "  [{tag}] {}", ch.name);
        } else {
            let _ = writeln!(s, "  [{tag}] {} ({})", ch.name, ch.detail);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// The graded root, each vertex labelled by its `PE_1` decoration.
pub fn render_dot(r: &Report) -> String {
    match &r.root {
        Some(root) => root.graph.to_dot(|v| {
            root.decorations
                .iter()
                .find(|d| d.n == v.n && d.index == v.index)
                .map(|d| format!("PE1: {}", d.pe1))
        }),
        None => "digraph graded_root {\n}\n".to_string(),
    }
}
