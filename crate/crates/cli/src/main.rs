use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symcalc::acceptance::{self, Mode, CRITERIA};
use symcalc::angular::{clebsch_gordan, wigner_3j, AngularData, SignedSquare};
use symcalc::characters::{ideal_character, ox_character, ox_is_extrapolated, plethysm, regularity_m0};
use symcalc::covariants::{a_e, c_e, compound_d, hessian, j_quotient, membership, quadratic_generators, wronskian_d};
use symcalc::emap::{choose_p, e_bruteforce, e_closedform, verify_cases, EParams, CASE_TSV_HEADER};
use symcalc::poly::VarSet;
use symcalc::rational::{format_rational, parse_rational};
use symcalc::ternary::{evaluate_concomitant, verify_quintic_lists, Concomitant, TernaryForm};
use symcalc::transvectant::{n_coeff, s_sum, transvectant, MonomialSpec};
use symcalc::{BinaryForm, Error, MultiPoly};

#[derive(Parser)]
#[command(name = "symcalc", version, about = "Exact computations with binary and ternary forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// k-th transvectant of two binary forms
    Transvect {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// N and S for the monomial transvectant [a1,a2;b1,b2;k]
    Ncoeff {
        /// a1,a2,b1,b2,k
        #[arg(long)]
        spec: String,
    },
    /// Clebsch-Gordan coefficient, or a table with --max-two-j
    Cg(Angular),
    /// Wigner 3j-symbol, or a table with --max-two-j
    #[command(name = "3j")]
    ThreeJ(Angular),
    /// Hessian of a binary form
    Hessian(FormArg),
    /// The Wronskian D(F); --compound gives the transvectant expression instead
    Wronskian {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        compound: bool,
    },
    /// J(P,Q) = Q^4 He(P/Q)
    Jpq {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// The covariant C_e; --rational prints numerator and denominator of A_e
    Ce {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        rational: bool,
    },
    /// Membership report for Y and the loci X^(d-e,e), as JSON
    Member {
        #[arg(long)]
        form: String,
        #[arg(long)]
        e: Vec<u32>,
    },
    /// The quadratic generators (F,F)_2i, e+1 <= i <= d/2, as TSV
    QuarticGens {
        #[arg(long)]
        form: String,
        #[arg(long)]
        e: u32,
    },
    /// The integrand E(r; p, p')
    Emap {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        pp: u32,
        #[arg(long, conflicts_with = "closed", required_unless_present = "closed")]
        brute: bool,
        #[arg(long)]
        closed: bool,
    },
    /// Nine-case sweep as TSV, or the row for one (d, e, r, p')
    Cases {
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long)]
        rmax: Option<u32>,
        /// literal integrand check up to this degree (r <= 3)
        #[arg(long, default_value_t = 0)]
        literal_dmax: u32,
        #[arg(long, requires_all = ["e", "r", "pp"], conflicts_with_all = ["dmax", "rmax"])]
        d: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        pp: Option<u32>,
    },
    /// SL2 character of S_r(S_d)
    Plethysm {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        out: CharOut,
    },
    /// Degree-r part of the ideal of X^(d-e,e); --ox for the coordinate ring
    IdealChar {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        ox: bool,
        #[command(flatten)]
        out: CharOut,
    },
    /// Castelnuovo regularity bound m0
    M0 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
    },
    /// Ternary concomitants in tableau notation
    Ternary {
        #[command(subcommand)]
        command: TernaryCommand,
    },
    /// Runs the acceptance suites and prints a summary table
    VerifyAll {
        #[arg(long)]
        quick: bool,
        /// run only these criteria
        #[arg(long)]
        only: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum TernaryCommand {
    /// Evaluates a tableau or combination on a ternary form
    Eval {
        #[arg(long)]
        tableau: String,
        /// JSON file, inline JSON, or a polynomial in x0, x1, x2
        #[arg(long)]
        form: String,
        #[arg(long)]
        json: bool,
    },
    /// Checks the degree 3 and 4 quintic lists
    Verify {
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct FormArg {
    /// text, JSON, or a file holding either
    #[arg(long)]
    form: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Angular {
    #[arg(long, allow_hyphen_values = true)]
    j1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m2: Option<String>,
    /// for 3j: third projection; defaults to -(m1+m2)
    #[arg(long, allow_hyphen_values = true)]
    m3: Option<String>,
    /// table of all physical entries with 2j_i up to this bound
    #[arg(long, conflicts_with_all = ["j1", "j2", "j", "m1", "m2", "m3"])]
    max_two_j: Option<i64>,
}

#[derive(Args)]
struct CharOut {
    #[arg(long, conflicts_with = "json")]
    tsv: bool,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("symcalc: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("symcalc: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn read_form(arg: &str) -> Result<BinaryForm, Failure> {
    Ok(BinaryForm::parse(&read_input(arg)?)?)
}

fn show_form(f: &BinaryForm, json: bool) -> String {
    if json {
        format!("{}\n", f.to_poly(&VarSet::binary("x")).to_json_string())
    } else {
        format!("{f}\n")
    }
}

fn show_poly(p: &MultiPoly, json: bool) -> String {
    if json {
        format!("{}\n", p.to_json_string())
    } else {
        format!("{p}\n")
    }
}

fn twice(label: &str, v: &Option<String>) -> Result<i64, Failure> {
    let s = v
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{label} is required without --max-two-j")))?;
    let q = parse_rational(s)? * symcalc::rational::int(2);
    if !q.is_integer() {
        return Err(Failure::Usage(format!("--{label} {s} is not a multiple of 1/2")));
    }
    symcalc::rational::to_i64(&q).ok_or_else(|| Failure::Usage(format!("--{label} {s} is too large")))
}

const ANGULAR_HEADER: &str = "2j1\t2j2\t2j\t2m1\t2m2\t2m\tsign\tsquare_num\tsquare_den\n";

fn angular_row(ad: &AngularData, v: &SignedSquare) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        ad.two_j1,
        ad.two_j2,
        ad.two_j,
        ad.two_m1,
        ad.two_m2,
        ad.two_m,
        v.sign(),
        v.square().numer(),
        v.square().denom()
    )
}

/// For 3j rows the sixth column is `2m3`.
fn angular(args: &Angular, three_j: bool) -> Run {
    let mut out = String::from(ANGULAR_HEADER);
    let row = |ad: &AngularData, m3: Option<i64>| {
        if !three_j {
            return angular_row(ad, &clebsch_gordan(ad));
        }
        let shown = AngularData::new(ad.two_j1, ad.two_j2, ad.two_j, ad.two_m1, ad.two_m2, m3.unwrap_or(-ad.two_m));
        let v = match m3 {
            Some(m3) if m3 != -ad.two_m => SignedSquare::zero(),
            _ => wigner_3j(ad),
        };
        angular_row(&shown, &v)
    };
    if let Some(max) = args.max_two_j {
        for ad in AngularData::sweep(max) {
            out.push_str(&row(&ad, None));
        }
        return Ok(out);
    }
    let (j1, j2, j) = (twice("j1", &args.j1)?, twice("j2", &args.j2)?, twice("j", &args.j)?);
    let (m1, m2) = (twice("m1", &args.m1)?, twice("m2", &args.m2)?);
    let m3 = match (&args.m3, three_j) {
        (Some(_), false) => return Err(Failure::Usage("--m3 applies to 3j only".into())),
        (Some(_), true) => Some(twice("m3", &args.m3)?),
        (None, _) => None,
    };
    out.push_str(&row(&AngularData::coupled(j1, j2, j, m1, m2), m3));
    Ok(out)
}

fn character_out(c: &symcalc::characters::Sl2Character, out: &CharOut, extrapolated: bool) -> Run {
    if out.json {
        let mut v = serde_json::to_value(c).map_err(|e| Failure::Usage(e.to_string()))?;
        if let Some(obj) = v.as_object_mut() {
            obj.insert("extrapolated".into(), extrapolated.into());
        }
        return Ok(format!("{v}\n"));
    }
    let mut s = String::new();
    if extrapolated {
        s.push_str("# r = 1: formula extrapolated\n");
    }
    if out.tsv {
        s.push_str(&c.to_tsv());
    } else {
        let _ = writeln!(s, "{c}");
    }
    Ok(s)
}

fn run(command: Command) -> Run {
    match command {
        Command::Transvect { a, b, k, json } => {
            let t = transvectant(&read_form(&a)?, &read_form(&b)?, k)?;
            Ok(show_form(&t, json))
        }
        Command::Ncoeff { spec } => {
            let v: Vec<u32> = spec
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("bad spec {spec:?}, expected a1,a2,b1,b2,k")))?;
            let [a1, a2, b1, b2, k] = v[..] else {
                return Err(Failure::Usage(format!("spec {spec:?} needs five entries")));
            };
            let spec = MonomialSpec::new(a1, a2, b1, b2, k)?;
            Ok(format!(
                "N\t{}\nS\t{}\n",
                format_rational(&n_coeff(&spec)),
                format_rational(&s_sum(&spec))
            ))
        }
        Command::Cg(args) => angular(&args, false),
        Command::ThreeJ(args) => angular(&args, true),
        Command::Hessian(f) => Ok(show_form(&hessian(&read_form(&f.form)?), f.json)),
        Command::Wronskian { form, compound } => {
            let f = read_form(&form.form)?;
            let w = if compound { compound_d(&f)? } else { wronskian_d(&f)? };
            Ok(show_form(&w, form.json))
        }
        Command::Jpq { p, q, json } => Ok(show_form(&j_quotient(&read_form(&p)?, &read_form(&q)?), json)),
        Command::Ce { form, e, rational } => {
            let f = read_form(&form.form)?;
            if rational {
                let (num, den) = a_e(&f, e)?;
                Ok(format!("{}{}", show_form(&num, form.json), show_form(&den, form.json)))
            } else {
                Ok(show_form(&c_e(&f, e)?, form.json))
            }
        }
        Command::Member { form, e } => {
            let r = membership(&read_form(&form)?, &e)?;
            let s = serde_json::to_string_pretty(&r).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(format!("{s}\n"))
        }
        Command::QuarticGens { form, e } => {
            let mut out = String::from("i\tgenerator\n");
            for (i, g) in quadratic_generators(&read_form(&form)?, e)? {
                let _ = writeln!(out, "{i}\t{g}");
            }
            Ok(out)
        }
        Command::Emap { d, e, r, p, pp, brute, .. } => {
            let params = EParams::new(d, e, r, p, pp)?;
            let v = if brute { e_bruteforce(&params)? } else { e_closedform(&params)? };
            Ok(show_poly(&v, false))
        }
        Command::Cases { dmax, rmax, literal_dmax, d, e, r, pp } => {
            if let (Some(d), Some(e), Some(r), Some(pp)) = (d, e, r, pp) {
                let row = choose_p(d, e, r, pp)?;
                let out = format!("{CASE_TSV_HEADER}\n{}\n", row.tsv_row());
                return if row.consistent() {
                    Ok(out)
                } else {
                    print!("{out}");
                    Err(Failure::Verification(format!("row for ({d},{e},{r},{pp}) is inconsistent")))
                };
            }
            let (Some(dmax), Some(rmax)) = (dmax, rmax) else {
                return Err(Failure::Usage("cases needs --dmax and --rmax, or --d --e --r --pp".into()));
            };
            let report = verify_cases(dmax, rmax, literal_dmax);
            if report.passed() {
                Ok(report.to_tsv())
            } else {
                print!("{}", report.to_tsv());
                Err(Failure::Verification(report.failures.join("\n")))
            }
        }
        Command::Plethysm { r, d, out } => character_out(&plethysm(r, d), &out, false),
        Command::IdealChar { d, e, r, ox, out } => {
            if ox {
                character_out(&ox_character(d, e, r)?, &out, ox_is_extrapolated(r))
            } else {
                character_out(&ideal_character(d, e, r)?, &out, false)
            }
        }
        Command::M0 { n, d, e } => Ok(format!("{}\n", regularity_m0(n, d, e)?)),
        Command::Ternary { command } => match command {
            TernaryCommand::Eval { tableau, form, json } => {
                let text = read_input(&form)?;
                let f = if text.trim_start().starts_with('{') {
                    TernaryForm::from_json_str(&text)?
                } else {
                    let p = symcalc::poly::parse_poly_with_vars(&text, &[VarSet::ternary("x")])?;
                    TernaryForm::from_poly(&p)?
                };
                let c = Concomitant::parse(&tableau)?;
                Ok(show_poly(&evaluate_concomitant(&c, &f)?, json))
            }
            TernaryCommand::Verify { samples, seed } => {
                let report = verify_quintic_lists(samples, seed)?;
                if report.passed() {
                    Ok(report.to_string())
                } else {
                    print!("{report}");
                    Err(Failure::Verification("quintic concomitant lists".into()))
                }
            }
        },
        Command::VerifyAll { quick, only } => {
            let mode = if quick { Mode::Quick } else { Mode::Full };
            let mut out = String::from("id\tstatus\tseconds\tlimit\tcriterion\tdetail\n");
            let mut failed = 0;
            for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
                let o = acceptance::run(c.id, mode)?;
                if !o.passed {
                    failed += 1;
                }
                let _ = writeln!(
                    out,
                    "{}\t{}\t{:.3}\t{}\t{}\t{}",
                    c.id,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.elapsed.as_secs_f64(),
                    c.limit.as_secs(),
                    c.name,
                    o.detail
                );
            }
            if failed == 0 {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification(format!("{failed} criteria failed")))
            }
        }
    }
}
