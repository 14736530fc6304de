//! Command implementations.

use std::fs;
use std::path::Path;

use uniloc_core::cauchy::cauchy_locale;
use uniloc_core::complete::{completion, lift_map, LiftOutcome};
use uniloc_core::error::{CoreError, Result};
use uniloc_core::frame::FrameElement;
use uniloc_core::present::PresRelation;
use uniloc_core::reflect::{conucleus, uniform_reflection};
use uniloc_core::relation::Relation;
use uniloc_core::textio::{dump_structure, parse_locale, parse_map, resolve_map, ParsedLocale};
use uniloc_core::uniform::{covers_to_entourages, entourages_to_covers, PreUniformLocale};

use crate::report::Report;
use crate::Command;

pub fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Check { file, laws } => cmd_check(&file, &laws),
        Command::Convert { file, dump } => cmd_convert(&file, dump.as_deref()),
        Command::Reflect { file, dump } => cmd_reflect(&file, dump.as_deref()),
        Command::Complete { file, dump } => cmd_complete(&file, dump.as_deref()),
        Command::Cauchy {
            file,
            regular,
            dump,
        } => cmd_cauchy(&file, regular, dump.as_deref()),
        Command::Lift {
            source,
            target,
            map,
        } => cmd_lift(&source, &target, &map),
        Command::Calc { expression } => cmd_calc(&expression),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CoreError::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<ParsedLocale> {
    parse_locale(&read(path)?)
}

fn emit(dump: Option<&Path>, text: &str) -> Result<()> {
    match dump {
        Some(path) => fs::write(path, text).map_err(|e| CoreError::Parse {
            line: 0,
            msg: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

const ALL_LAWS: [&str; 3] = ["uniformly-below", "conucleus", "roundtrip"];

fn cmd_check(file: &Path, laws: &[String]) -> Result<bool> {
    let selected: Vec<&str> = if laws.is_empty() {
        ALL_LAWS.to_vec()
    } else {
        laws.iter().map(|s| s.as_str()).collect()
    };
    for law in &selected {
        if !ALL_LAWS.contains(law) {
            return Err(CoreError::Unsupported(format!("unknown law `{law}`")));
        }
    }

    let parsed = load(file)?;
    let mut report = Report::new(format!("check {}", file.display()));
    report.info(
        "structure",
        format!(
            "frame {} ({} irreducibles), {} covers, {} entourages",
            parsed.name,
            parsed.frame.irr_count(),
            parsed.covers.len(),
            parsed.entourages.len()
        ),
    );
    if !parsed.has_uniformity() {
        report.pass("frame");
        report.print();
        return Ok(report.all_passed());
    }
    let structure = match parsed.structure() {
        Ok(s) => s,
        Err(e) => {
            report.fail("validate", e.to_string());
            report.print();
            return Ok(false);
        }
    };
    report.pass("validate");
    report.info(
        "admissible",
        if structure.is_admissible() {
            "true".to_string()
        } else {
            "false (pre-uniform only)".to_string()
        },
    );
    for law in selected {
        match law {
            "uniformly-below" => law_uniformly_below(&structure, &mut report),
            "conucleus" => law_conucleus(&structure, &mut report),
            "roundtrip" => law_roundtrip(&structure, &mut report),
            _ => unreachable!(),
        }
    }
    report.print();
    Ok(report.all_passed())
}

fn law_uniformly_below(s: &PreUniformLocale, report: &mut Report) {
    let both = match s.with_both() {
        Ok(b) => b,
        Err(e) => {
            report.fail("law uniformly-below", e.to_string());
            return;
        }
    };
    let elems = match both.frame().elements() {
        Ok(e) => e,
        Err(e) => {
            report.fail("law uniformly-below", e.to_string());
            return;
        }
    };
    let cover_below =
        |a: &FrameElement, b: &FrameElement| both.covers().unwrap().min_member().star(a).leq(b);
    let ent_below = |a: &FrameElement, b: &FrameElement| {
        let sq = both.square();
        let aa = Relation::new(sq, sq.inject(a, a)).unwrap();
        both.entourages()
            .unwrap()
            .min_member()
            .compose(&aa)
            .unwrap()
            .element()
            .leq(&sq.inject(b, b))
    };
    let mut pairs = 0usize;
    for a in &elems {
        for b in &elems {
            if cover_below(a, b) != ent_below(a, b) {
                report.fail(
                    "law uniformly-below",
                    format!("cover and entourage forms disagree at {a} ◁ {b}"),
                );
                return;
            }
            if cover_below(a, b) {
                if !a.leq(b) {
                    report.fail("law uniformly-below", format!("{a} ◁ {b} but not ≤"));
                    return;
                }
                if !elems.iter().any(|c| cover_below(a, c) && cover_below(c, b)) {
                    report.fail(
                        "law uniformly-below",
                        format!("no interpolant for {a} ◁ {b}"),
                    );
                    return;
                }
            }
            pairs += 1;
        }
    }
    report.pass_with("law uniformly-below", format!("{pairs} pairs"));
}

fn law_conucleus(s: &PreUniformLocale, report: &mut Report) {
    let elems = match s.frame().elements() {
        Ok(e) => e,
        Err(e) => {
            report.fail("law conucleus", e.to_string());
            return;
        }
    };
    for b in &elems {
        let rb = conucleus(s, b);
        if !rb.leq(b) || conucleus(s, &rb) != rb {
            report.fail("law conucleus", format!("fails at {b}"));
            return;
        }
        for b2 in &elems {
            if conucleus(s, &b.meet(b2)) != rb.meet(&conucleus(s, b2)) {
                report.fail("law conucleus", format!("meet law fails at {b}, {b2}"));
                return;
            }
        }
    }
    if !conucleus(s, &s.frame().top()).is_top() {
        report.fail("law conucleus", "top is not fixed");
        return;
    }
    report.pass_with("law conucleus", format!("{} elements", elems.len()));
}

fn law_roundtrip(s: &PreUniformLocale, report: &mut Report) {
    let run = || -> Result<bool> {
        let both = s.with_both()?;
        let cov = both.covers().unwrap();
        let ent = both.entourages().unwrap();
        let cov_back = entourages_to_covers(&covers_to_entourages(cov)?)?;
        let ent_back = covers_to_entourages(&entourages_to_covers(ent)?)?;
        Ok(cov_back.filter_equal(cov) && ent_back.filter_equal(ent))
    };
    match run() {
        Ok(true) => report.pass("law roundtrip"),
        Ok(false) => report.fail("law roundtrip", "filters differ after conversion"),
        Err(e) => report.fail("law roundtrip", e.to_string()),
    }
}

fn cmd_convert(file: &Path, dump: Option<&Path>) -> Result<bool> {
    let parsed = load(file)?;
    let structure = parsed.structure()?;
    let both = structure.with_both()?;
    let mut report = Report::new(format!("convert {}", file.display()));
    report.pass("validate");
    law_roundtrip(&both, &mut report);
    report.print();
    emit(dump, &dump_structure(&parsed.name, &both, &[]))?;
    Ok(report.all_passed())
}

fn cmd_reflect(file: &Path, dump: Option<&Path>) -> Result<bool> {
    let parsed = load(file)?;
    let structure = parsed.structure()?;
    let refl = uniform_reflection(&structure)?;
    let mut report = Report::new(format!("reflect {}", file.display()));
    report.pass("validate");
    report.info(
        "fixed subframe",
        format!(
            "{} of {} elements, {} irreducibles",
            refl.fixed_points().len(),
            structure.frame().elements()?.len(),
            refl.frame().irr_count()
        ),
    );
    report.verdict(
        "reflected admissible",
        refl.reflected().is_admissible(),
        "reflection failed admissibility",
    );
    report.verdict(
        "unit strongly dense",
        refl.include().is_strongly_dense(),
        "unit not strongly dense",
    );
    report.info(
        "unit iso",
        format!("{}", refl.unit_is_iso().unwrap_or(false)),
    );
    report.print();
    let legend: Vec<String> = (0..refl.frame().irr_count())
        .map(|j| {
            format!(
                "{} = {}",
                refl.frame().poset().name(j),
                refl.include().irreducible_image(j)
            )
        })
        .collect();
    emit(
        dump,
        &dump_structure(
            &format!("{}_reflected", parsed.name),
            refl.reflected(),
            &legend,
        ),
    )?;
    Ok(report.all_passed())
}

fn cmd_complete(file: &Path, dump: Option<&Path>) -> Result<bool> {
    let parsed = load(file)?;
    let structure = parsed.structure()?;
    let c = completion(&structure)?;
    let mut report = Report::new(format!("complete {}", file.display()));
    report.pass("validate");
    report.verdict(
        "completed admissible",
        c.completed().is_admissible(),
        "completion not admissible",
    );
    report.verdict(
        "unit strongly dense",
        c.unit().is_strongly_dense(),
        "unit not strongly dense",
    );
    report.info("unit iso", format!("{}", c.unit_is_iso().unwrap_or(false)));
    report.info(
        "completed frame",
        format!("{} irreducibles", c.frame().irr_count()),
    );
    report.print();
    let legend: Vec<String> = (0..c.frame().irr_count())
        .map(|j| {
            format!(
                "unit({}) = {}",
                c.frame().poset().name(j),
                c.unit().irreducible_image(j)
            )
        })
        .collect();
    emit(
        dump,
        &dump_structure(
            &format!("{}_completed", parsed.name),
            c.completed(),
            &legend,
        ),
    )?;
    Ok(report.all_passed())
}

fn format_mask(c: &uniloc_core::cauchy::CauchyLocale, mask: u128) -> String {
    if mask == 0 {
        return "top".to_string();
    }
    let names: Vec<String> = c
        .presented()
        .presentation()
        .generators
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, g)| g.name.clone())
        .collect();
    names.join(" & ")
}

fn cmd_cauchy(file: &Path, regular: bool, dump: Option<&Path>) -> Result<bool> {
    let parsed = load(file)?;
    let structure = parsed.structure()?;
    let c = cauchy_locale(&structure, regular)?;
    let mut report = Report::new(format!(
        "cauchy {} ({})",
        file.display(),
        if regular { "regular" } else { "plain" }
    ));
    report.pass("validate");
    report.verdict(
        "counit strongly dense",
        c.counit().is_strongly_dense(),
        "counit not strongly dense",
    );
    report.info(
        "classifying frame",
        format!("{} irreducibles", c.frame().irr_count()),
    );
    report.info(
        "counit iso",
        format!("{}", c.counit().is_isomorphism().unwrap_or(false)),
    );
    report.print();

    let mut text = String::new();
    text.push_str(&format!(
        "presentation {} {}\n",
        if regular { "regular" } else { "plain" },
        parsed.name
    ));
    for g in &c.presented().presentation().generators {
        text.push_str(&format!("generator {}\n", g.name));
    }
    for r in &c.presented().presentation().relations {
        match r {
            PresRelation::MeetEq(a, b) => {
                text.push_str(&format!(
                    "relation {} = {}\n",
                    format_mask(&c, *a),
                    format_mask(&c, *b)
                ));
            }
            PresRelation::Cover(l, rs) => {
                let rhs: Vec<String> = rs.iter().map(|m| format_mask(&c, *m)).collect();
                text.push_str(&format!(
                    "cover {} <= ({})\n",
                    format_mask(&c, *l),
                    rhs.join(", ")
                ));
            }
        }
    }
    text.push_str(&dump_structure(
        &format!("{}_cauchy", parsed.name),
        &c.uniformity()?,
        &[],
    ));
    emit(dump, &text)?;
    Ok(report.all_passed())
}

fn cmd_lift(source: &Path, target: &Path, map: &Path) -> Result<bool> {
    let src = load(source)?;
    let tgt = load(target)?;
    let m = parse_map(&read(map)?)?;
    let f = resolve_map(&m, &src.frame, &tgt.frame)?;
    let src_structure = src.structure()?;
    let tgt_structure = tgt.structure()?;
    let cx = completion(&src_structure)?;
    let cy = completion(&tgt_structure)?;
    let mut report = Report::new(format!(
        "lift {} : {} -> {}",
        m.name,
        source.display(),
        target.display()
    ));
    report.pass("validate");
    match lift_map(&f, &cx, &cy)? {
        LiftOutcome::Lifted { map } => {
            report.pass_with(
                "lifting criterion",
                "cover and entourage forms agree".to_string(),
            );
            report.pass("commuting square");
            report.info(
                "lift",
                format!(
                    "{} -> {} on {} irreducibles",
                    cy.frame().poset().names().join(","),
                    cx.frame().poset().names().join(","),
                    map.source().irr_count()
                ),
            );
        }
        LiftOutcome::Failed { witness } => {
            report.fail("lifting criterion", format!("fails at {witness}"));
        }
    }
    report.print();
    Ok(report.all_passed())
}

fn cmd_calc(expression: &str) -> Result<bool> {
    println!("{}", uniloc_core::calc::evaluate(expression)?);
    Ok(true)
}
