//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use parry_pascal::checks::{
    all_words, diagonal_pairs, extension_closure, longest_zero_ending_run, lucas_consistency, propagation,
    star_implies_residue, unary_reduction, zero_block_identity,
};
use parry_pascal::hausdorff::convergence_report;
use parry_pascal::star::{a0_approx, an_approx, p_of, star_check, star_pairs};
use parry_pascal::{
    binom_row, brute_force_count, BlockMode, CustomLinearSystem, NumerationSystem, ResidueSpec, TriangleBlock, Word,
};
use parry_pascal_cli::run;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sys(text: &str) -> NumerationSystem {
    NumerationSystem::from_text(text).unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Runs the command line, returning (exit code, stdout).
fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("parry-pascal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn cli_ok(args: &[&str]) -> std::result::Result<String, String> {
    let (code, out) = cli(args);
    ensure(code == 0, format!("`{}` exited with {code}", args.join(" ")))?;
    Ok(out)
}

/// Entries of a CSV dump as a dense matrix.
fn parse_triangle_csv(text: &str, rows: usize, cols: usize) -> std::result::Result<Vec<Vec<u64>>, String> {
    let mut m = vec![vec![u64::MAX; cols]; rows];
    let mut lines = text.lines();
    ensure(lines.next() == Some("i,j,word_i,word_j,value"), "bad CSV header")?;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (i, j, v): (usize, usize, u64) = (
            f[0].parse().map_err(|_| line)?,
            f[1].parse().map_err(|_| line)?,
            f[4].parse().map_err(|_| line)?,
        );
        m[i][j] = v;
    }
    Ok(m)
}

fn criterion_1() -> Outcome {
    let golden: [[u64; 8]; 8] = [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0, 0],
        [1, 1, 2, 1, 0, 0, 0, 0],
        [1, 2, 1, 0, 1, 0, 0, 0],
        [1, 1, 3, 3, 0, 1, 0, 0],
        [1, 2, 2, 1, 2, 0, 1, 0],
        [1, 2, 3, 1, 1, 0, 0, 1],
    ];
    let binary: [[u64; 8]; 8] = [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0, 0],
        [1, 2, 0, 1, 0, 0, 0, 0],
        [1, 1, 2, 0, 1, 0, 0, 0],
        [1, 2, 1, 1, 0, 1, 0, 0],
        [1, 2, 2, 1, 0, 0, 1, 0],
        [1, 3, 0, 3, 0, 0, 0, 1],
    ];
    for (dbeta, table, words) in [
        ("1,1", golden, "ε 1 10 100 101 1000 1001 1010"),
        ("1;1", binary, "ε 1 10 11 100 101 110 111"),
    ] {
        let text = cli_ok(&["triangle", "--dbeta", dbeta, "--rows", "8", "--cols", "8"])?;
        let header: Vec<&str> = text.lines().next().unwrap_or("").split_whitespace().collect();
        ensure(header.join(" ") == words, format!("{dbeta}: column words {header:?}"))?;
        let csv = cli_ok(&[
            "triangle", "--dbeta", dbeta, "--rows", "8", "--cols", "8", "--format", "csv",
        ])?;
        let got = parse_triangle_csv(&csv, 8, 8)?;
        for (i, row) in table.iter().enumerate() {
            ensure(got[i] == row, format!("{dbeta}: row {i} is {:?}", got[i]))?;
        }
    }
    Ok("both 8×8 tables exact".into())
}

fn criterion_2() -> Outcome {
    let phi = sys("1,1");
    let u = phi.u_sequence(9).map_err(|e| e.to_string())?;
    ensure(u == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89], format!("U_φ = {u:?}"))?;
    let p = p_of(&sys("2,1,0,1"), &w("101"), &w("21")).map_err(|e| e.to_string())?;
    ensure(p == 2, format!("p(101, 21) = {p}"))?;
    let s = sys("1,0,0,1");
    ensure(s.c_beta() == 3, format!("C_β = {}", s.c_beta()))?;
    let first: Vec<String> = s.enumerate_language(7).iter().map(Word::to_plain).collect();
    ensure(
        first == ["", "1", "10", "100", "1000", "10000", "10001"],
        format!("first words {first:?}"),
    )?;
    let run = longest_zero_ending_run(&s, 200);
    ensure(run == 4, format!("longest run {run}"))?;
    Ok("U_φ, p(101,21)=2, C_β=3, first 7 words, run of 4".into())
}

fn criterion_3() -> Outcome {
    for text in ["1,1", "2;1", "2,1,0,1", "1,0,0,1"] {
        let s = sys(text);
        for word in s.enumerate_language(500).iter().filter(|x| !x.is_empty()) {
            let (a, b) = (s.is_in_language(word, false), s.is_in_language(&word.pushed(0), false));
            ensure(a && b, format!("{text}: {word}"))?;
        }
        let letters = s.max_digit() + 1;
        for word in all_words(letters, 6)
            .iter()
            .filter(|x| x.digits().first().is_some_and(|&d| d > 0))
        {
            let (a, b) = (s.is_in_language(word, false), s.is_in_language(&word.pushed(0), false));
            ensure(a == b, format!("{text}: {word} in L = {a}, {word}0 in L = {b}"))?;
        }
    }
    let mut f = CustomLinearSystem::new(vec![1, 1], vec![1, 3]).map_err(|e| e.to_string())?;
    let rep6 = f.rep(6).map_err(|e| e.to_string())?;
    ensure(rep6.to_plain() == "102", format!("rep(6) = {rep6}"))?;
    let out = cli_ok(&["convert", "--custom-coeffs", "1,1", "--custom-init", "1,3", "rep", "6"])?;
    ensure(out.trim() == "102", format!("CLI rep(6) = {out}"))?;
    ensure(
        f.is_normal(&w("2")).unwrap() && !f.is_normal(&w("20")).unwrap(),
        "2 / 20 normality",
    )?;
    Ok("four systems on 500 words; custom rep(6) = 102".into())
}

fn criterion_4() -> Outcome {
    let phi = sys("1,1");
    let lang = phi.words(phi.u(8).map_err(|e| e.to_string())?);
    let binary = all_words(2, 8);
    for (name, words) in [("L_φ", &lang), ("binary", &binary)] {
        for u in words {
            let row = binom_row(u, words).map_err(|e| e.to_string())?;
            for (v, got) in words.iter().zip(row) {
                if v.len() > u.len() {
                    ensure(got == 0, format!("{name}: binom({u}, {v}) = {got}"))?;
                    continue;
                }
                let want = brute_force_count(u, v).map_err(|e| e.to_string())?;
                ensure(
                    got == want,
                    format!("{name}: binom({u}, {v}) = {got}, brute force {want}"),
                )?;
            }
        }
    }
    let short = phi.words(phi.u(5).map_err(|e| e.to_string())?);
    for outcome in [
        zero_block_identity(&short, 4),
        unary_reduction(1, 12),
        lucas_consistency(64, &[2, 3, 5]),
    ] {
        let outcome = outcome.map_err(|e| e.to_string())?;
        ensure(outcome.passed(), outcome.to_string())?;
    }
    Ok(format!(
        "{} + {} words, zero blocks, unary, Lucas",
        lang.len(),
        binary.len()
    ))
}

fn criterion_5() -> Outcome {
    let phi = sys("1,1");
    let odd = ResidueSpec::odd();
    let pairs = star_pairs(&phi, 6, odd).map_err(|e| e.to_string())?;
    for outcome in [
        diagonal_pairs(&phi, 6, odd),
        star_implies_residue(&phi, &pairs, odd),
        extension_closure(&phi, &pairs, odd),
        propagation(&phi, &pairs, odd, 4),
    ] {
        let outcome = outcome.map_err(|e| e.to_string())?;
        ensure(outcome.passed(), outcome.to_string())?;
    }
    ensure(star_check(&phi, &w("101"), &w("10"), odd).unwrap(), "(101, 10) fails")?;
    ensure(
        !star_check(&phi, &w("1010"), &w("101"), odd).unwrap(),
        "(1010, 101) passes",
    )?;
    Ok(format!("{} pairs with |u| ≤ 6", pairs.len()))
}

fn criterion_6() -> Outcome {
    let phi = sys("1,1");
    let beta = phi.beta();
    let a0 = a0_approx(&phi, 10, ResidueSpec::odd()).map_err(|e| e.to_string())?;
    for s in a0.iter() {
        let side = beta.powi(-((s.u.len() + s.p) as i32));
        ensure(
            (s.b[0] - s.a[0] - side).abs() <= 1e-9 && (s.b[1] - s.a[1] - side).abs() <= 1e-9,
            format!("B − A for ({}, {})", s.u, s.v),
        )?;
        if !s.u.is_empty() {
            for pt in [s.a, s.b] {
                let inside = (0.0..=1.0).contains(&pt[0]) && pt[1] >= 1.0 / beta - 1e-9 && pt[1] <= 1.0 + 1e-9;
                ensure(inside, format!("({}, {}) leaves the strip: {pt:?}", s.u, s.v))?;
            }
        }
    }
    let x0 = beta.powi(-2);
    let one = an_approx(&a0, 1, &phi).clipped(x0, 1e-12);
    let three = an_approx(&a0, 3, &phi).clipped(x0, 1e-12);
    ensure(
        one.len() == three.len(),
        format!("{} vs {} clipped pieces", one.len(), three.len()),
    )?;
    for (p, q) in one.iter().zip(&three) {
        ensure(
            p.iter().zip(q).all(|(a, b)| (a - b).abs() <= 1e-9),
            format!("{p:?} vs {q:?}"),
        )?;
    }
    Ok(format!("{} segments; {} pieces agree on x ≥ 1/β²", a0.len(), one.len()))
}

fn criterion_7() -> Outcome {
    let phi = sys("1,1");
    let rows = convergence_report(&phi, ResidueSpec::odd(), &[4, 9], 10, 4, 1e-3).map_err(|e| e.to_string())?;
    let (d4, d9) = (&rows[0], &rows[1]);
    ensure(
        d9.distance < d4.distance,
        format!("d9 = {} ≥ d4 = {}", d9.distance, d4.distance),
    )?;
    ensure(
        d9.distance + d9.error_bound < 0.25,
        format!("d9 + bound = {}", d9.distance + d9.error_bound),
    )?;
    Ok(format!(
        "d4 = {:.6}, d9 = {:.6} (bound {:.6})",
        d4.distance, d9.distance, d9.error_bound
    ))
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pbm = dir.path().join("u9.pbm");
    cli_ok(&["uset", "--dbeta", "1,1", "--n", "9", "--out", pbm.to_str().unwrap()])?;
    let text = std::fs::read_to_string(&pbm).map_err(|e| e.to_string())?;
    let mut tokens = text.split_whitespace();
    ensure(tokens.next() == Some("P1"), "PBM magic")?;
    let (wd, ht) = (tokens.next(), tokens.next());
    ensure(wd == Some("89") && ht == Some("89"), format!("PBM size {wd:?}×{ht:?}"))?;
    let pixels: Vec<&str> = tokens.collect();
    ensure(pixels.len() == 89 * 89, format!("{} pixels", pixels.len()))?;
    let black = pixels.iter().filter(|&&t| t == "1").count();
    let block = TriangleBlock::new(&sys("1,1"), 89, 89, BlockMode::Exact).map_err(|e| e.to_string())?;
    let odd = (0..89)
        .flat_map(|i| (0..89).map(move |j| (i, j)))
        .filter(|&(i, j)| block.get(i, j) % 2 == 1)
        .count();
    ensure(black == odd, format!("{black} black pixels, {odd} odd entries"))?;

    let svg = dir.path().join("a4.svg");
    cli_ok(&[
        "segments",
        "--dbeta",
        "1,1",
        "--maxlen",
        "10",
        "--iters",
        "4",
        "--out",
        svg.to_str().unwrap(),
    ])?;
    let text = std::fs::read_to_string(&svg).map_err(|e| e.to_string())?;
    let doc = roxmltree::Document::parse(&text).map_err(|e| format!("invalid SVG: {e}"))?;
    let root = doc.root_element();
    ensure(
        root.tag_name().name() == "svg" && root.attribute("viewBox") == Some("0 0 1 1"),
        "svg root",
    )?;
    let lines = doc.descendants().filter(|n| n.has_tag_name("line")).count();
    let pairs = star_pairs(&sys("1,1"), 10, ResidueSpec::odd())
        .map_err(|e| e.to_string())?
        .len();
    ensure(
        lines == pairs * 15,
        format!("{lines} lines, {pairs} pairs × 15 = {}", pairs * 15),
    )?;
    Ok(format!("{black} black pixels; {lines} = {pairs} × 15 segments"))
}

fn criterion_9() -> Outcome {
    let csv = cli_ok(&[
        "uset",
        "--dbeta",
        "1,1",
        "--n",
        "9",
        "--mod",
        "3",
        "--residue",
        "2",
        "--format",
        "csv",
    ])?;
    let mut lines = csv.lines();
    ensure(lines.next() == Some("col,row"), "CSV header")?;
    let mut cells: Vec<(usize, usize)> = lines
        .map(|l| {
            let (c, r) = l.split_once(',').unwrap();
            (r.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    cells.sort();
    let block = TriangleBlock::new(&sys("1,1"), 89, 89, BlockMode::Residue(3)).map_err(|e| e.to_string())?;
    let expected: Vec<(usize, usize)> = (0..89)
        .flat_map(|i| (0..89).map(move |j| (i, j)))
        .filter(|&(i, j)| block.get(i, j) == 2)
        .collect();
    ensure(
        cells == expected,
        format!("{} cells, {} entries ≡ 2", cells.len(), expected.len()),
    )?;
    Ok(format!("{} cells ≡ 2 (mod 3)", cells.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("table reproduction", criterion_1, Duration::from_secs(1)),
        ("numeration examples", criterion_2, Duration::from_secs(1)),
        ("Bertrand checks", criterion_3, Duration::from_secs(2)),
        ("binomial oracle equivalence", criterion_4, Duration::from_secs(30)),
        ("(⋆) suite", criterion_5, Duration::from_secs(60)),
        ("geometry", criterion_6, Duration::from_secs(60)),
        ("convergence diagnostic", criterion_7, Duration::from_secs(60)),
        ("figure regeneration", criterion_8, Duration::from_secs(30)),
        ("mod-3 extension", criterion_9, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {elapsed:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}; {elapsed:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
