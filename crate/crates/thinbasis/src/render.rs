//! JSON, CSV and plain-text renderings of an [`Envelope`].

use std::fmt::Write;

use crate::cli::Format;
use crate::error::{CliError, CliResult};
use crate::record::{Construction, Envelope, Num, Output, ProfileReport};

pub fn render(env: &Envelope, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv(&env.output),
        Format::Text => Ok(text(env)),
    }
}

pub fn parse(json: &str) -> serde_json::Result<Envelope> {
    serde_json::from_str(json)
}

fn join(v: &[Num]) -> String {
    v.iter().map(Num::to_string).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn csv(out: &Output) -> CliResult<String> {
    let mut s = String::new();
    match out {
        Output::Profile(p) => {
            s.push_str("x,A,ratio_decimal\n");
            profile_csv(&mut s, None, p);
        }
        Output::Compare(c) => {
            s.push_str("construction,x,A,ratio_decimal\n");
            for e in &c.entries {
                profile_csv(&mut s, Some(e.construction.label()), &e.profile);
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "csv output covers profile rows only, not `{}`",
                other.command()
            )))
        }
    }
    Ok(s)
}

fn profile_csv(s: &mut String, label: Option<&str>, p: &ProfileReport) {
    for r in &p.rows {
        if let Some(l) = label {
            let _ = write!(s, "{l},");
        }
        let _ = writeln!(s, "{},{},{}", r.x, r.count, r.ratio_decimal.as_deref().unwrap_or(""));
    }
}

pub fn describe(c: &Construction) -> String {
    match c {
        Construction::Shatrovskii { h, r, p, k0, k1 } => {
            format!("shatrovskii h={h} r={} P={p} k0={k0} k1={k1}", join(r))
        }
        Construction::Gadic { g, h, class_of } => {
            let classes = class_of.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            format!("gadic g={g} h={h} class_of={classes}")
        }
        Construction::Frobenius { aprime, h, threshold } => {
            format!("frobenius aprime={} h={h} C={threshold}", join(aprime))
        }
    }
}

fn profile_text(s: &mut String, p: &ProfileReport) {
    let _ = writeln!(s, "{:>24} {:>16} {:>18}", "x", "A(x)", "A(x)/x^(1/h)");
    for r in &p.rows {
        let _ = writeln!(s, "{:>24} {:>16} {:>18}", r.x, r.count, r.ratio_decimal.as_deref().unwrap_or("-"));
    }
    let _ = writeln!(s, "counts monotone: {}", p.counts_monotone);
    let _ = writeln!(s, "max ratio: {}", opt(&p.max_ratio));
}

fn text(env: &Envelope) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", describe(&env.construction));
    match &env.output {
        Output::Construct(c) => {
            if let Some(t) = &c.scheme {
                let _ = writeln!(s, "interval end (h-1) S_k1: {}", t.interval_end);
                for row in &t.rows {
                    let _ = writeln!(
                        s,
                        "k={} s={} S_{}={} a={}",
                        row.k,
                        join(&row.moduli),
                        row.k,
                        row.product,
                        join(&row.cofactors)
                    );
                }
                for e in &t.ells {
                    let _ = writeln!(s, "l_{}={} (k={})", e.t, e.ell, e.k);
                }
            }
            let _ = writeln!(s, "elements up to {}: {}", c.preview_limit, join(&c.preview));
        }
        Output::Decompose(d) => {
            let _ = writeln!(s, "n = {}", d.n);
            for (t, f) in d.terms.iter().zip(&d.factors) {
                match f {
                    Some(f) => {
                        let _ = writeln!(s, "  {t} = {} * {}", f.a, f.v);
                    }
                    None => {
                        let _ = writeln!(s, "  {t}");
                    }
                }
            }
            let _ = writeln!(s, "sum ok: {}, members ok: {}", d.sum_ok, d.members_ok);
        }
        Output::Enumerate(e) => {
            let _ = writeln!(s, "A({}) = {}", e.x, e.count);
            let _ = writeln!(s, "{}", join(&e.elements));
        }
        Output::Verify(v) => {
            let c = &v.coverage;
            let _ = writeln!(s, "coverage of [0, {}] by {}-fold sums", c.n, c.h);
            let _ = writeln!(s, "covered: {}", c.covered);
            let _ = writeln!(s, "first gap: {}", opt(&c.first_gap));
            let _ = writeln!(s, "elements used: {}", c.elements_used);
            let l = &v.lower_bound;
            let _ = writeln!(s, "counting lower bound holds: {} (first violation: {})", l.holds, opt(&l.first_violation));
            let m = &v.samples;
            let _ = writeln!(s, "sampled decompositions: {} with seed {}, all ok: {}", m.samples, m.seed, m.all_ok);
            if let Some(t) = &v.thinness {
                let _ = writeln!(
                    s,
                    "thinness bound with constant {}: {} (max ratio {})",
                    t.constant,
                    t.all_hold,
                    opt(&t.max_ratio)
                );
            }
            let _ = writeln!(s, "passed: {}", v.passed);
        }
        Output::Profile(p) => profile_text(&mut s, p),
        Output::Compare(c) => {
            for e in &c.entries {
                let _ = writeln!(s, "\n{}", describe(&e.construction));
                profile_text(&mut s, &e.profile);
            }
        }
    }
    s
}
