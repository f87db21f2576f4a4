//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nonsing::charclasses::{sw_virtual, TotalClass};
use nonsing::cohomology::{sq, Coefficients, TruncatedRing};
use nonsing::ext::{ext_chart, resolve};
use nonsing::f2::F2Matrix;
use nonsing::module::{verify_module, SteenrodModule};
use nonsing::stablerange::{
    e1_support, projective_space_betti, render_e1_zones, stability_bound, stable_range_for,
    stable_series, Parity, RangeInput, Zone, ZoneFormat, ZoneParams,
};
use nonsing::steenrod::{is_admissible, SteenrodAlgebra, SteenrodElement};
use nonsing::thom::jet_thom_module;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn repro(d: i64) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nonsing"))
        .args(["repro-h2", "--d", &d.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure!(
        out.status.success(),
        "repro-h2 --d {d} exited with {}",
        out.status
    );
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), took))
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (d, verdict, total) in [(6, "Z/2", 1), (7, "0", 0)] {
        let (stdout, took) = repro(d)?;
        ensure!(took < Duration::from_secs(30), "d={d} took {took:?}");
        let last = stdout.lines().last().unwrap_or_default();
        ensure!(
            last == verdict,
            "d={d}: verdict {last:?}, expected {verdict:?}"
        );
        let total_line = format!("stem 3 total: {total}");
        ensure!(
            stdout.lines().any(|l| l == total_line),
            "d={d}: missing {total_line:?}"
        );
        notes.push(format!("d={d} -> {last} in {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let ring = TruncatedRing::projective_space(2, Coefficients::F2);
    for d in 1..=50 {
        let w = sw_virtual(2, d).map_err(|e| e.to_string())?;
        let expected = ring
            .element(if d % 2 == 0 { &[1, 0, 0] } else { &[1, 1, 0] })
            .unwrap();
        ensure!(w.as_element() == &expected, "w for d={d} is {w}");
        let w1 = sw_virtual(1, d).map_err(|e| e.to_string())?;
        ensure!(
            w1.piece_in_degree(2).is_zero(),
            "CP^1, d={d}: w2 = {}",
            w1.piece_in_degree(2)
        );
    }
    Ok("CP^2: 1 / 1 + x by parity for d <= 50; CP^1: w2 = 0".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for d in 2..=200 {
        let inp = RangeInput::zero_section(2, 1, d).map_err(|e| e.to_string())?;
        let rep = stability_bound(&inp).map_err(|e| e.to_string())?;
        ensure!(
            rep.bound_main == (d - 1) / 2,
            "d={d}: bound {}",
            rep.bound_main
        );
        if d % 2 == 1 {
            ensure!(
                rep.top_degree() == stable_range_for(d),
                "d={d}: ranges differ"
            );
            ensure!(!rep.discrepancy, "d={d}: unexpected flag");
        } else {
            ensure!(
                rep.top_degree() < stable_range_for(d),
                "d={d}: expected a one-degree gap"
            );
            ensure!(rep.discrepancy, "d={d}: discrepancy not flagged");
        }
    }
    for r in 0..=4i64 {
        for d in 0..=200i64 {
            let inp = RangeInput {
                n: 1,
                r,
                amp: d,
                rk: 2,
                codim_real: 4,
            };
            let rep = stability_bound(&inp).map_err(|e| e.to_string())?;
            // bound_main <= (d - r)/(r + 1)
            ensure!(
                rep.bound_main * (r + 1) <= d - r,
                "r={r}, d={d}: {} exceeds intro bound",
                rep.bound_main
            );
        }
    }
    within(start, Duration::from_secs(1), "range arithmetic")?;
    Ok(
        "floor((d-1)/2) for 2 <= d <= 200, even d flagged; e=2 bound within intro bound for r <= 4"
            .into(),
    )
}

fn criterion_4() -> Outcome {
    let cp2 = stable_series(&projective_space_betti(2), 9).map_err(|e| e.to_string())?;
    ensure!(
        cp2.coefficients == [1, 1, 0, 1, 1, 1, 1, 0, 1, 1],
        "CP^2: {:?}",
        cp2.coefficients
    );
    for n in 0..=5usize {
        let top = (n + 1) * (n + 1);
        let s = stable_series(&projective_space_betti(n), top + 2).map_err(|e| e.to_string())?;
        let degrees: Vec<u32> = s.generators.iter().map(|g| g.degree).collect();
        let expected: Vec<u32> = (0..=n as u32).map(|i| 2 * i + 1).collect();
        ensure!(degrees == expected, "CP^{n}: generators in {degrees:?}");
        ensure!(
            s.generators
                .iter()
                .all(|g| g.parity == Parity::Exterior && g.count == 1),
            "CP^{n}: generators not single exterior"
        );
        let total: u128 = s.coefficients.iter().sum();
        ensure!(total == 1 << (n + 1), "CP^{n}: total dimension {total}");
    }
    Ok("CP^2 coefficients exact; CP^n exterior on 1,3,..,2n+1 for n <= 5".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let a = SteenrodAlgebra::default();
    let res = resolve(&a, &SteenrodModule::trivial(0), 4, 12).map_err(|e| e.to_string())?;
    let chart = ext_chart(&res);
    for s in 0..=4 {
        ensure!(
            chart.dim(s, s as i32) == 1,
            "Ext^({s},{s}) = {}",
            chart.dim(s, s as i32)
        );
    }
    let h: Vec<i32> = (0..=9).filter(|&t| chart.dim(1, t) > 0).collect();
    ensure!(h == [1, 2, 4, 8], "Ext^1 nonzero at {h:?}");
    let stem = |k: i32| -> Vec<usize> { (0..=4).map(|s| chart.dim(s, k + s as i32)).collect() };
    ensure!(stem(1) == [0, 1, 0, 0, 0], "stem 1: {:?}", stem(1));
    ensure!(stem(3) == [0, 1, 1, 1, 0], "stem 3: {:?}", stem(3));
    within(start, Duration::from_secs(60), "sphere resolution")?;
    Ok(format!(
        "h0 tower, h0..h3, stems 1 and 3 classical ({:.2?})",
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let a = SteenrodAlgebra::default();
    // (a) closure and associativity through degree 12
    let el = |m: &nonsing::steenrod::AdmissibleMonomial| SteenrodElement::from(m.clone());
    for p in 1..=12u32 {
        for q in 1..=12 - p {
            for x in a.basis(p).unwrap().monomials.iter() {
                for y in a.basis(q).unwrap().monomials.iter() {
                    let xy = a.multiply(&el(x), &el(y)).unwrap();
                    ensure!(
                        xy.terms().all(|m| is_admissible(m.exponents())),
                        "({x})({y}) not closed"
                    );
                    for r in 1..=12 - p - q {
                        for z in a.basis(r).unwrap().monomials.iter() {
                            let left = a.multiply(&xy, &el(z)).unwrap();
                            let right = a
                                .multiply(&el(x), &a.multiply(&el(y), &el(z)).unwrap())
                                .unwrap();
                            ensure!(left == right, "({x})({y})({z}) not associative");
                        }
                    }
                }
            }
        }
    }
    // (b) Cartan formula on monomials, m <= 8
    for m in 0..=8 {
        let ring = TruncatedRing::projective_space(m, Coefficients::F2);
        for i in 0..=m {
            for j in 0..=m {
                let (x, y) = (ring.x_power(i), ring.x_power(j));
                for k in 0..=2 * (i + j) {
                    let lhs = sq(k, &x.cup(&y).unwrap()).unwrap();
                    let rhs = (0..=k).fold(ring.zero(), |acc, l| {
                        acc.add(&sq(l, &x).unwrap().cup(&sq(k - l, &y).unwrap()).unwrap())
                            .unwrap()
                    });
                    ensure!(lhs == rhs, "Cartan fails: Sq{k}(x^{i} x^{j}) in {ring}");
                }
            }
        }
    }
    // (c) built Thom modules verify; a corrupted one does not
    for n in 1..=4 {
        for d in 1..=12 {
            let m = jet_thom_module(n, d).map_err(|e| e.to_string())?;
            ensure!(
                verify_module(&m, &a).unwrap().is_consistent(),
                "Thom n={n} d={d} fails"
            );
        }
    }
    let mut bad = jet_thom_module(2, 6).unwrap();
    bad.set_action(2, 2, F2Matrix::identity(1)).unwrap();
    ensure!(
        !verify_module(&bad, &a).unwrap().is_consistent(),
        "corrupted module passed"
    );
    // (d) exactness and minimality
    let cp2 = TruncatedRing::projective_space(2, Coefficients::F2);
    let untwisted = nonsing::thom::build_thom_module(&cp2, &TotalClass::trivial(cp2), 2).unwrap();
    let modules = [
        SteenrodModule::trivial(0),
        jet_thom_module(2, 6).unwrap(),
        jet_thom_module(2, 7).unwrap(),
        untwisted,
    ];
    for m in &modules {
        let res = resolve(&a, m, 5, m.min_degree() + 14).map_err(|e| e.to_string())?;
        ensure!(
            res.exactness_failures().unwrap().is_empty(),
            "resolution not exact"
        );
        ensure!(res.is_minimal(), "resolution not minimal");
    }
    // (e) rank-nullity and rref idempotence on 1000 random matrices
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let (rows, cols) = (rng.gen_range(0..48), rng.gen_range(0..130));
        let mut m = F2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen_bool(0.5));
            }
        }
        let (e, _) = m.rref();
        ensure!(e.rref().0 == e, "rref not idempotent on sample {i}");
        ensure!(
            m.rank() + m.kernel_basis().len() == cols,
            "rank-nullity fails on sample {i}"
        );
    }
    Ok("(a) Adem closure/associativity, (b) Cartan, (c) verify + negative control, (d) exact minimal resolutions, (e) 1000 matrices".into())
}

fn criterion_7() -> Outcome {
    for big_n in 0..=10i64 {
        for e in [2i64, 3, 4] {
            for rk in [None, Some(e), Some(big_n + 3)] {
                let p = ZoneParams::new(big_n, e, rk).map_err(|x| x.to_string())?;
                let t_max = 2 * (big_n + 3) * rk.unwrap_or(e) + 10;
                for t in 0..=t_max {
                    for s in (-big_n - 6)..=-1 {
                        let zone = e1_support(s, t, &p).map_err(|x| x.to_string())?;
                        let j = -s;
                        let expected = if s <= -big_n - 3 {
                            Zone::Forbidden
                        } else if s == -big_n - 2 {
                            if t < big_n * e + e {
                                Zone::LastColumnVanishing
                            } else {
                                Zone::Outside
                            }
                        } else if j * e <= t && rk.is_none_or(|rk| t <= 2 * j * rk) {
                            Zone::Allowed
                        } else {
                            Zone::Forbidden
                        };
                        ensure!(
                            zone == expected,
                            "N={big_n} e={e} rk={rk:?} ({s},{t}): {zone:?}"
                        );
                    }
                }
            }
        }
    }
    let grid = render_e1_zones(&ZoneParams::new(1, 2, None).unwrap(), 8, ZoneFormat::Ascii);
    let row = |t: u32| -> String {
        let prefix = format!("{t:>4} |");
        grid.lines()
            .find_map(|l| l.strip_prefix(&prefix))
            .map(|r| r.split_whitespace().collect())
            .unwrap_or_default()
    };
    for t in 0..=8 {
        let last = if t < 4 { '_' } else { '?' };
        let col2 = if t >= 4 { '#' } else { '.' };
        let col1 = if t >= 2 { '#' } else { '.' };
        let expected: String = ['.', last, col2, col1].iter().collect();
        ensure!(row(t) == expected, "grid row t={t}: {:?}", row(t));
    }
    ensure!(
        grid == render_e1_zones(&ZoneParams::new(1, 2, None).unwrap(), 8, ZoneFormat::Ascii),
        "grid not deterministic"
    );
    Ok("predicate exact for N <= 10, e in {2,3,4}; N=1, e=2 grid zones match".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("parity reproduction", criterion_1),
        ("Stiefel-Whitney dichotomy", criterion_2),
        ("range arithmetic", criterion_3),
        ("stable rational series", criterion_4),
        ("Ext oracle", criterion_5),
        ("property suites", criterion_6),
        ("vanishing zones", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(note) => println!("criterion {} ({name}): PASS - {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
