//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

use std::mem::discriminant;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use parry_abelian::builder::{fixpoint_enumerate, FixpointResult};
use parry_abelian::numeration::{greedy_urep_u64, prefix_from_digits, urep_value};
use parry_abelian::oracle::{parikh, Oracle};
use parry_abelian::substitution::BalanceVerdict;
use parry_abelian::{
    build, BuildOptions, BuildReport, Dfao, Limits, NormalURep, OutputKind, ParrySubstitution,
    USequence,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

mod common;

const FIB_BUILD_BUDGET: Duration = Duration::from_secs(10);
const FIB_EVAL_BUDGET: Duration = Duration::from_secs(5);
const FIB_AC_RANGE: u64 = 100_000;
const FIB_ORACLE_RANGE: usize = 2000;
const TRIB_ORACLE_RANGE: usize = 1000;
const NON_SIMPLE_ORACLE_RANGE: usize = 500;
const SPECTRAL_TOL: f64 = 1e-9;
const MATRIX_FACTORS: usize = 1000;
const MAX_FACTOR_LEN: usize = 1000;
const PREFIX_RANGE: usize = 5000;
const ROUND_TRIP_RANGE: u64 = 1_000_000;
const LOG_EVAL_N: u64 = 1_000_000_000_000;
const LOG_EVAL_BUDGET: Duration = Duration::from_millis(1);
const LOG_EVAL_REPS: usize = 1001;
const FUZZ_SAMPLES: usize = 10_000;
const FUZZ_MAX_LEN: usize = 64;
const MINIMIZED_AC_RANGE: u64 = 10_000;
const SEED: u64 = 0x5eed_ab31;

struct Built {
    name: &'static str,
    sub: ParrySubstitution,
    dfao: Dfao,
    report: BuildReport,
    fix: FixpointResult,
}

struct Context {
    limits: Limits,
    built: Vec<Built>,
}

impl Context {
    fn get(&self, name: &str) -> &Built {
        self.built.iter().find(|b| b.name == name).unwrap()
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Context) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Automaton and oracle agree on both outputs for `1..=to`.
fn oracle_equivalence(b: &Built, to: usize, limits: &Limits) -> Result<(), String> {
    let truth = Oracle::new(&b.sub, *limits)
        .prel_sets(1, to)
        .map_err(|e| e.to_string())?;
    let useq = USequence::new(&b.sub);
    for (i, set) in truth.iter().enumerate() {
        let n = (i + 1) as u64;
        let ac = b
            .dfao
            .eval_u64(&useq, n, OutputKind::Ac)
            .map_err(|e| format!("n={n}: {e}"))?;
        let bal = b
            .dfao
            .eval_u64(&useq, n, OutputKind::Balance)
            .map_err(|e| format!("n={n}: {e}"))?;
        ensure(ac as usize == set.len() && bal == set.balance(), || {
            format!(
                "n={n}: automaton (AC={ac}, B={bal}) vs oracle (AC={}, B={})",
                set.len(),
                set.balance()
            )
        })?;
    }
    Ok(())
}

fn fibonacci_criterion(ctx: &Context) -> Outcome {
    let b = ctx.get("fibonacci");
    ensure(b.report.elapsed < FIB_BUILD_BUDGET, || {
        format!(
            "build took {:?}, budget {FIB_BUILD_BUDGET:?}",
            b.report.elapsed
        )
    })?;
    let mut useq = USequence::new(&b.sub);
    useq.cover(&BigUint::from(FIB_AC_RANGE));
    let started = Instant::now();
    let bad = (1..=FIB_AC_RANGE)
        .into_par_iter()
        .find_first(|&n| b.dfao.eval_u64(&useq, n, OutputKind::Ac).ok() != Some(2));
    let eval_time = started.elapsed();
    if let Some(n) = bad {
        return Err(format!(
            "AC({n}) = {:?}",
            b.dfao.eval_u64(&useq, n, OutputKind::Ac)
        ));
    }
    ensure(eval_time < FIB_EVAL_BUDGET, || {
        format!("evaluation took {eval_time:?}, budget {FIB_EVAL_BUDGET:?}")
    })?;
    oracle_equivalence(b, FIB_ORACLE_RANGE, &ctx.limits)?;
    Ok(format!(
        "build {:?}; AC(n)=2 for n≤{FIB_AC_RANGE} in {eval_time:?}; oracle match n≤{FIB_ORACLE_RANGE}",
        b.report.elapsed
    ))
}

fn tribonacci_criterion(ctx: &Context) -> Outcome {
    let b = ctx.get("tribonacci");
    let useq = USequence::new(&b.sub);
    let ac1 = b
        .dfao
        .eval_u64(&useq, 1, OutputKind::Ac)
        .map_err(|e| e.to_string())?;
    ensure(ac1 == 3, || format!("AC(1) = {ac1}"))?;
    oracle_equivalence(b, TRIB_ORACLE_RANGE, &ctx.limits)?;
    Ok(format!(
        "AC(1)=3; AC and B match oracle n≤{TRIB_ORACLE_RANGE}; M={}",
        b.report.states
    ))
}

fn non_simple_criterion(ctx: &Context) -> Outcome {
    let b = ctx.get("non-simple");
    let report = b
        .sub
        .spectral_balance_check(SPECTRAL_TOL)
        .map_err(|e| e.to_string())?;
    ensure(report.verdict == BalanceVerdict::Certified, || {
        format!(
            "verdict {:?}, subdominant {}",
            report.verdict, report.subdominant_modulus
        )
    })?;
    oracle_equivalence(b, NON_SIMPLE_ORACLE_RANGE, &ctx.limits)?;
    Ok(format!(
        "Certified (subdominant {:.6}); AC and B match oracle n≤{NON_SIMPLE_ORACLE_RANGE}",
        report.subdominant_modulus
    ))
}

fn matrix_identity_criterion(ctx: &Context) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    for b in &ctx.built {
        let a = b.sub.alphabet_size();
        let m = b.sub.incidence_matrix();
        let u = b
            .sub
            .fixed_point_prefix(4 * MAX_FACTOR_LEN, &ctx.limits)
            .map_err(|e| e.to_string())?;
        for _ in 0..MATRIX_FACTORS {
            let len = rng.gen_range(0..=MAX_FACTOR_LEN);
            let start = rng.gen_range(0..=u.len() - len);
            let w = &u[start..start + len];
            let lhs: Vec<i64> = parikh(&b.sub.apply(w), a)
                .counts()
                .iter()
                .map(|&c| c as i64)
                .collect();
            let psi: Vec<i64> = parikh(w, a).counts().iter().map(|&c| c as i64).collect();
            let rhs = m.left_mul_i64(&psi);
            ensure(lhs == rhs, || {
                format!("{}: factor at {start}+{len}: {lhs:?} vs {rhs:?}", b.name)
            })?;
        }
    }
    Ok(format!(
        "{MATRIX_FACTORS} random factors (|w|≤{MAX_FACTOR_LEN}) on each of 3 substitutions"
    ))
}

fn prefix_formula_criterion(ctx: &Context) -> Outcome {
    for b in &ctx.built {
        let u = b
            .sub
            .fixed_point_prefix(PREFIX_RANGE, &ctx.limits)
            .map_err(|e| e.to_string())?;
        let useq = USequence::new(&b.sub);
        (0..=PREFIX_RANGE).into_par_iter().try_for_each(|n| {
            let rep = greedy_urep_u64(&useq, n as u64);
            let w = prefix_from_digits(&b.sub, &rep, &ctx.limits).map_err(|e| e.to_string())?;
            ensure(w.letters() == &u[..n], || {
                format!("{}: n={n}, ⟨n⟩={rep}", b.name)
            })
        })?;
    }
    Ok(format!("n≤{PREFIX_RANGE} on each of 3 substitutions"))
}

fn round_trip_criterion(ctx: &Context) -> Outcome {
    for b in &ctx.built {
        let mut useq = USequence::new(&b.sub);
        useq.cover(&BigUint::from(ROUND_TRIP_RANGE));
        let a0 = b.sub.alpha0();
        (0..=ROUND_TRIP_RANGE).into_par_iter().try_for_each(|n| {
            let rep = greedy_urep_u64(&useq, n);
            let back = urep_value(&useq, &rep).map_err(|e| e.to_string())?;
            ensure(back == BigUint::from(n), || {
                format!("{}: n={n} → {rep} → {back}", b.name)
            })?;
            ensure(rep.digits().iter().all(|&d| d <= a0), || {
                format!("{}: n={n} digit > α₀ in {rep}", b.name)
            })?;
            ensure(rep.digits().first() != Some(&0), || {
                format!("{}: n={n} leading zero in {rep}", b.name)
            })
        })?;
    }
    Ok(format!("n≤{ROUND_TRIP_RANGE} on each of 3 substitutions"))
}

fn zero_sum_criterion(ctx: &Context) -> Outcome {
    let mut triples = 0usize;
    for b in &ctx.built {
        let c = b.report.consts.c;
        for (j, state) in b.fix.states.iter().enumerate() {
            for t in state.triples() {
                ensure(t.psi.sum() == 0, || {
                    format!("{}: state {j} has ψ={} with nonzero sum", b.name, t.psi)
                })?;
                ensure(t.psi.max_abs() <= c, || {
                    format!("{}: state {j} has ψ={} beyond c={c}", b.name, t.psi)
                })?;
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{triples} triples across all admitted states sum to 0 and respect c"
    ))
}

fn fixpoint_criterion(ctx: &Context) -> Outcome {
    let mut summary = Vec::new();
    for b in &ctx.built {
        let h = &b.fix.mem2_history;
        ensure(h.len() >= 2, || format!("{}: history {h:?}", b.name))?;
        ensure(h.windows(2).all(|w| w[0] <= w[1]), || {
            format!("{}: |Mem₂| decreased: {h:?}", b.name)
        })?;
        let last = h.len() - 1;
        ensure(h[last] == h[last - 1], || {
            format!("{}: loop exited while growing: {h:?}", b.name)
        })?;
        ensure(h[..last].windows(2).all(|w| w[0] < w[1]), || {
            format!(
                "{}: a zero-growth round did not stop the loop: {h:?}",
                b.name
            )
        })?;
        ensure(b.fix.iterations == last, || {
            format!("{}: {} iterations for {h:?}", b.name, b.fix.iterations)
        })?;
        summary.push(format!(
            "{} M={} |Mem₂|={} rounds={}",
            b.name,
            b.fix.state_count(),
            h[last],
            b.fix.iterations
        ));
    }
    Ok(summary.join("; "))
}

fn log_eval_criterion(ctx: &Context) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    for b in &ctx.built {
        let useq = USequence::new(&b.sub);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=LOG_EVAL_N);
            let rep = greedy_urep_u64(&useq, n);
            let path = b.dfao.trace(rep.digits()).map_err(|e| e.to_string())?;
            ensure(path.len() - 1 == rep.len(), || {
                format!(
                    "{}: n={n}: {} transitions for {} digits",
                    b.name,
                    path.len() - 1,
                    rep.len()
                )
            })?;
            let via_path = b.dfao.output(*path.last().unwrap(), OutputKind::Ac);
            let direct = b
                .dfao
                .eval_digits(&rep, OutputKind::Ac)
                .map_err(|e| e.to_string())?;
            ensure(via_path == direct, || {
                format!("{}: n={n}: trace and eval disagree", b.name)
            })?;
        }
    }
    let fib = ctx.get("fibonacci");
    let n = BigUint::from(LOG_EVAL_N);
    let mut useq = USequence::new(&fib.sub);
    useq.cover(&n);
    let mut times: Vec<Duration> = (0..LOG_EVAL_REPS)
        .map(|_| {
            let t = Instant::now();
            let v = fib.dfao.eval_n(&useq, &n, OutputKind::Ac);
            let dt = t.elapsed();
            assert_eq!(v.unwrap(), 2);
            dt
        })
        .collect();
    times.sort();
    let median = times[LOG_EVAL_REPS / 2];
    ensure(median < LOG_EVAL_BUDGET, || {
        format!("median eval at n=10¹² took {median:?}")
    })?;
    Ok(format!(
        "transitions = digits on 1000 random n per substitution; Fibonacci n=10¹² ({} digits) median {median:?}",
        greedy_urep_u64(&useq, LOG_EVAL_N).len()
    ))
}

fn minimization_criterion(ctx: &Context) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut sizes = Vec::new();
    for b in &ctx.built {
        let min = b.dfao.minimize();
        ensure(min.num_states() <= b.dfao.num_states(), || {
            format!("{}: minimization grew", b.name)
        })?;
        let again = min.minimize();
        ensure(again == min, || {
            format!("{}: minimize is not idempotent", b.name)
        })?;
        let a0 = b.sub.alpha0();
        for _ in 0..FUZZ_SAMPLES {
            let len = rng.gen_range(1..=FUZZ_MAX_LEN);
            let digits = NormalURep::from_digits((0..len).map(|_| rng.gen_range(0..=a0)).collect());
            for which in [OutputKind::Ac, OutputKind::Balance] {
                let x = b.dfao.eval_digits(&digits, which);
                let y = min.eval_digits(&digits, which);
                let same = match (&x, &y) {
                    (Ok(p), Ok(q)) => p == q,
                    (Err(p), Err(q)) => discriminant(p) == discriminant(q),
                    _ => false,
                };
                ensure(same, || {
                    format!("{}: {digits} ({which}): {x:?} vs {y:?}", b.name)
                })?;
            }
        }
        sizes.push(format!(
            "{} {}→{}",
            b.name,
            b.dfao.num_states(),
            min.num_states()
        ));
    }
    let fib = ctx.get("fibonacci").dfao.minimize();
    let useq = USequence::new(fib.substitution());
    if let Some(n) =
        (1..=MINIMIZED_AC_RANGE).find(|&n| fib.eval_u64(&useq, n, OutputKind::Ac).ok() != Some(2))
    {
        return Err(format!("minimized Fibonacci automaton: AC({n}) ≠ 2"));
    }
    Ok(format!(
        "{FUZZ_SAMPLES} fuzzed strings agree, idempotent; states {}",
        sizes.join(", ")
    ))
}

fn prepare() -> Result<Context, String> {
    let limits = Limits::default();
    let mut built = Vec::new();
    for (name, sub) in common::test_substitutions() {
        let (dfao, report) =
            build(&sub, &BuildOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let fix = fixpoint_enumerate(&sub, &report.consts, &limits)
            .map_err(|e| format!("{name}: {e}"))?;
        built.push(Built {
            name,
            sub,
            dfao,
            report,
            fix,
        });
    }
    Ok(Context { limits, built })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Fibonacci AC≡2, oracle match, timing", fibonacci_criterion),
        ("Tribonacci oracle equivalence", tribonacci_criterion),
        (
            "non-simple (2,1) spectral check and oracle equivalence",
            non_simple_criterion,
        ),
        ("Parikh vector matrix identity", matrix_identity_criterion),
        ("prefix formula", prefix_formula_criterion),
        (
            "numeration round trip and digit bounds",
            round_trip_criterion,
        ),
        ("zero-sum and c-bound on built states", zero_sum_criterion),
        (
            "fixpoint termination and stop criterion",
            fixpoint_criterion,
        ),
        ("logarithmic evaluation", log_eval_criterion),
        ("minimization soundness", minimization_criterion),
    ];
    let ctx = match prepare() {
        Ok(ctx) => ctx,
        Err(e) => {
            for (i, (name, _)) in criteria.iter().enumerate() {
                println!("FAIL criterion {:>2}: {name}: build failed: {e}", i + 1);
            }
            return ExitCode::FAILURE;
        }
    };
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&ctx)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let dt = started.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{dt:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {detail} [{dt:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
