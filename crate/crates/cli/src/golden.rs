//! The worked examples, each reproduced end-to-end with its expected outcomes asserted.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use syzforms::dist::{self, cw_homology, lds_check, random_element, sing_scheme, Distribution};
use syzforms::forms::{nform_from_vfield, vfield_from_nform, PForm, VectorField};
use syzforms::groebner::Ideal;
use syzforms::resolution::BettiTable;
use syzforms::syzforms::{brute_force_space, FormSpace, SyzygyForms};
use syzforms::{Polynomial, Result};

use crate::scenario::{Inputs, ScenarioResult};

pub const EXAMPLE_NAMES: [&str; 7] =
    ["three-points", "twisted-cubic", "fat-point", "deg2-foliation", "instanton-4", "instanton-5", "non-lds"];

/// Fresh draws allowed when a random instanton candidate fails its certificates.
pub const INSTANTON_RETRIES: usize = 5;

#[derive(Clone, Copy, Debug, Default)]
pub struct ExampleOptions {
    pub seed: u64,
    /// Also cross-check every form space against the brute-force solver.
    pub oracle: bool,
}

pub(crate) fn ideal(nvars: usize, gens: &[&str]) -> Ideal {
    Ideal::new(nvars, gens.iter().map(|g| Polynomial::parse(g, nvars).expect("golden polynomial")).collect())
        .expect("golden ideal")
}

fn form(text: &str, nvars: usize) -> PForm {
    PForm::parse(text, nvars).expect("golden form")
}

/// Three non-collinear points of `P^2`.
pub fn three_points_ideal() -> Ideal {
    ideal(3, &["x0*x1", "x0*x2", "x1*x2"])
}

/// The two known 1-forms vanishing on the three points.
pub fn three_points_forms() -> [PForm; 2] {
    [form("x0*x1*dx2 - x0*x2*dx1", 3), form("x0*x2*dx1 - x1*x2*dx0", 3)]
}

pub fn twisted_cubic_ideal() -> Ideal {
    ideal(4, &["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"])
}

/// A length-5 point of `P^3` which is not a local complete intersection.
pub fn fat_point_ideal() -> Ideal {
    ideal(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"])
}

/// `A dx_0 + B dx_1 + C dx_2` for `t = e_k`, `k = 0..5`: the reference parameterization
/// of every 1-form of degree 1 vanishing on the fat point.
pub fn fat_point_forms() -> Vec<PForm> {
    [
        "x1*x2*dx0 - x0*x2*dx1",
        "x1*x2*dx1 - x1^2*dx2",
        "x1^2*dx0 - (x0*x1 - x2^2)*dx1 - x1*x2*dx2",
        "x0*x2*dx0 - x0^2*dx2",
        "(x0*x1 - x2^2)*dx0 - x0^2*dx1 + x0*x2*dx2",
    ]
    .iter()
    .map(|s| form(s, 4))
    .collect()
}

/// `(C, P, v)`: a double structure on a line, three points, and the reference quadratic vector field.
pub fn deg2_foliation_data() -> (Ideal, Ideal, VectorField) {
    let c = ideal(4, &["x0^2", "x0*x1", "x1^2", "x0*(x2^2 - x3^2) - x1*x3*x2"]);
    let p = Ideal::intersect_all(&[
        ideal(4, &["x2 - x0", "x2 + x1", "x3"]),
        ideal(4, &["x1 - x0", "x2", "x3 + x0"]),
        ideal(4, &["x1 - 2*x0", "x2 + x0", "x3 - x0"]),
    ]);
    let v = VectorField::parse(
        "-4*x0^2 - 50*x0*x1 + 20*x1^2, \
         -40*x0^2 + 16*x0*x1 - 10*x1^2, \
         40*x0^2 - 45*x0*x1 + 35*x1^2 - 4*x0*x2 + 50*x1*x2 + 30*x0*x3, \
         50*x0^2 + 40*x0*x1 - 40*x1^2 + 30*x0*x2 - 4*x0*x3 + 20*x1*x3",
        4,
    )
    .expect("golden vector field");
    (c, p, v)
}

/// Two disjoint double lines of genus −3.
pub fn instanton5_curves() -> (Ideal, Ideal) {
    (
        ideal(4, &["x0^2", "x0*x1", "x1^2", "x0*x2^3 - x1*x3^3"]),
        ideal(4, &["x2^2", "x2*x3", "x3^2", "x2*x0^3 - x3*x1^3"]),
    )
}

/// A 2-form on `P^4` that descends but is not locally decomposable.
pub fn non_lds_form() -> PForm {
    form("x0*dx1^dx2 + x0*dx3^dx4 - x1*dx0^dx2 + x2*dx0^dx1 - x3*dx0^dx4 + x4*dx0^dx3", 5)
}

pub fn run_example(name: &str, opts: &ExampleOptions) -> Result<ScenarioResult> {
    match name {
        "three-points" => three_points(opts),
        "twisted-cubic" => twisted_cubic(opts),
        "fat-point" => fat_point(opts),
        "deg2-foliation" => deg2_foliation(opts),
        "instanton-4" => instanton_4(opts),
        "instanton-5" => instanton_5(opts),
        "non-lds" => non_lds(),
        other => Err(syzforms::Error::InvalidInput(format!(
            "unknown example `{other}` (expected one of {})",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}

fn inputs(ideal: &Ideal, p: usize, d: i64, seed: Option<u64>) -> Inputs {
    Inputs { ideal: Some(ideal.to_file_format()), p: Some(p), d: Some(d), seed }
}

pub(crate) fn betti_json(b: &BettiTable) -> Value {
    serde_json::from_str(&b.to_json()).expect("betti json")
}

pub(crate) fn form_strings(forms: &[PForm]) -> Vec<String> {
    forms.iter().map(|w| w.to_string()).collect()
}

fn check_betti(r: &mut ScenarioResult, sf: &SyzygyForms, expected: &[(usize, i64, u64)]) -> Result<()> {
    let betti = sf.resolution().betti()?;
    r.output("betti", betti_json(&betti));
    let want: Vec<String> = expected.iter().map(|(i, j, b)| format!("b{i},{j}={b}")).collect();
    let got: Vec<String> = expected.iter().map(|&(i, j, _)| format!("b{i},{j}={}", betti.get(i, j))).collect();
    r.check_detail(&format!("Betti numbers {}", want.join(" ")), want == got, got.join(" "));
    Ok(())
}

fn check_dim(r: &mut ScenarioResult, space: &FormSpace, expected: usize) {
    let (p, d) = (space.p(), space.d());
    r.check_detail(&format!("dim A^{p}(Z)_{d} = {expected}"), space.dim() == expected, format!("dim {}", space.dim()));
}

fn check_oracle(r: &mut ScenarioResult, ideal: &Ideal, space: &FormSpace) {
    let (p, d) = (space.p(), space.d());
    let brute = brute_force_space(ideal, p, d);
    r.check_detail(
        &format!("A^{p}(Z)_{d} agrees with the brute-force solver"),
        space.same_span(&brute),
        format!("brute-force dim {}", brute.dim()),
    );
}

fn same_up_to_sign(a: &PForm, b: &PForm) -> bool {
    a == b || *a == b.neg()
}

fn three_points(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let z = three_points_ideal();
    let mut r = ScenarioResult::new("three-points", inputs(&z, 1, 1, Some(opts.seed)));
    let sf = SyzygyForms::new(&z);
    check_betti(&mut r, &sf, &[(0, 2, 3), (1, 3, 2)])?;
    let images = sf.xi_images(1, 3)?;
    r.output("xi_images", form_strings(&images));
    let reference = three_points_forms();
    let exact = images.len() == 2
        && ((same_up_to_sign(&images[0], &reference[0]) && same_up_to_sign(&images[1], &reference[1]))
            || (same_up_to_sign(&images[0], &reference[1]) && same_up_to_sign(&images[1], &reference[0])));
    r.check("xi_1 images are the reference pair up to order and sign", exact);
    let span = FormSpace::spanned_by(3, 1, 1, &images)?.same_span(&FormSpace::spanned_by(3, 1, 1, &reference)?);
    r.check("xi_1 images span the reference pair", span);
    let space = sf.form_space(1, 1)?;
    r.output("space", space.to_json());
    check_dim(&mut r, &space, 2);
    let line_and_point = Ideal::of_variables(3, &[0]).intersect(&Ideal::of_variables(3, &[1, 2]));
    r.check("omega_1 vanishes on a line and a point", sing_scheme(&reference[0]).equal(&line_and_point));
    let generic = random_element(&space, &mut ChaCha8Rng::seed_from_u64(opts.seed))?;
    r.output("generic", generic.to_string());
    r.check("a general combination vanishes exactly on Z", sing_scheme(&generic).equal(&z));
    if opts.oracle {
        check_oracle(&mut r, &z, &space);
    }
    Ok(r)
}

fn twisted_cubic(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let z = twisted_cubic_ideal();
    let mut r = ScenarioResult::new("twisted-cubic", inputs(&z, 1, 1, Some(opts.seed)));
    let sf = SyzygyForms::new(&z);
    check_betti(&mut r, &sf, &[(0, 2, 3), (1, 3, 2)])?;
    let space = sf.form_space(1, 1)?;
    r.output("space", space.to_json());
    check_dim(&mut r, &space, 2);
    let below = sf.form_space(1, 0)?;
    check_dim(&mut r, &below, 0);
    let generic = random_element(&space, &mut ChaCha8Rng::seed_from_u64(opts.seed))?;
    r.output("generic", generic.to_string());
    r.check("a general element vanishes exactly on Z", sing_scheme(&generic).equal(&z));
    if opts.oracle {
        check_oracle(&mut r, &z, &space);
        check_oracle(&mut r, &z, &below);
    }
    Ok(r)
}

fn fat_point(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let z = fat_point_ideal();
    let mut r = ScenarioResult::new("fat-point", inputs(&z, 1, 1, Some(opts.seed)));
    let sf = SyzygyForms::new(&z);
    check_betti(&mut r, &sf, &[(0, 2, 5), (1, 3, 5)])?;
    let space = sf.form_space(1, 1)?;
    r.output("space", space.to_json());
    check_dim(&mut r, &space, 5);
    r.check("no basis element involves x3 or dx3", space.basis().iter().all(free_of_last_variable));
    let reference = FormSpace::spanned_by(4, 1, 1, &fat_point_forms())?;
    r.check("the space is the reference A, B, C family", space.same_span(&reference));
    if opts.oracle {
        check_oracle(&mut r, &z, &space);
    }
    Ok(r)
}

/// No `dx_n` term and no coefficient involving `x_n`.
pub fn free_of_last_variable(w: &PForm) -> bool {
    let last = w.nvars() - 1;
    w.terms().all(|(idx, c)| !idx.contains(&last) && c.terms().iter().all(|(m, _)| m.exponent(last) == 0))
}

fn deg2_foliation(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let (c, p, v) = deg2_foliation_data();
    let z = c.intersect(&p);
    let mut r = ScenarioResult::new("deg2-foliation", inputs(&z, 2, 2, None));
    let omega = nform_from_vfield(&v);
    r.output("omega", omega.to_string());
    let back = vfield_from_nform(&omega)?;
    r.check("the vector field is recovered from d(omega)", back == v);
    r.check("omega is locally decomposable", lds_check(&omega));
    let sing = sing_scheme(&omega);
    r.output("sing", generator_strings(&sing));
    r.check("saturated singular ideal equals I_C ∩ I_P", sing.equal(&z));
    let space = SyzygyForms::new(&z).form_space(2, 2)?;
    r.output("space_dim", space.dim());
    r.output("space_split", json!({"tor": space.tor_part(), "radial": space.radial_part()}));
    r.check_detail("omega lies in the candidate space", space.contains(&omega), format!("dim {}", space.dim()));
    if opts.oracle {
        check_oracle(&mut r, &z, &space);
    }
    Ok(r)
}

fn generator_strings(ideal: &Ideal) -> Vec<String> {
    ideal.minimal_generators().iter().map(|g| g.to_string()).collect()
}

fn non_lds() -> Result<ScenarioResult> {
    let omega = non_lds_form();
    let mut r = ScenarioResult::new(
        "non-lds",
        Inputs { ideal: None, p: Some(2), d: omega.coefficient_degree().map(|k| k as i64 - 1), seed: None },
    );
    r.output("omega", omega.to_string());
    r.check("omega descends to P^4", omega.descends());
    r.check("omega is not locally decomposable", !lds_check(&omega));
    let h = cw_homology(&omega)?;
    r.check("homology of the tangent complex is zero", h.is_zero());
    Ok(r)
}

/// Everything computed for one instanton candidate.
struct InstantonRun {
    omega: PForm,
    sing_ok: bool,
    chern: Option<[i64; 3]>,
    chern_json: Value,
    h1: Option<u64>,
}

fn instanton_candidate(c: &Ideal, space: &FormSpace, rng: &mut ChaCha8Rng) -> Result<InstantonRun> {
    let omega = random_element(space, rng)?;
    let sing_ok = sing_scheme(&omega).equal(c);
    let mut run = InstantonRun { omega, sing_ok, chern: None, chern_json: Value::Null, h1: None };
    if !sing_ok {
        return Ok(run);
    }
    let dist = Distribution::new(run.omega.clone())?;
    let f = dist.conormal_sheaf()?.twist(dist.degree());
    if let Ok(ch) = f.chern_classes() {
        run.chern = Some(ch.c);
        run.chern_json = ch.to_json();
    }
    run.h1 = Some(f.cohomology_dim(1, -2)?);
    Ok(run)
}

fn record_instanton(r: &mut ScenarioResult, c: &Ideal, space: &FormSpace, run: &InstantonRun, charge: i64) {
    r.output("space_dim", space.dim());
    r.output("omega", run.omega.to_string());
    r.output("chern", run.chern_json.clone());
    r.output("h1_F(-2)", json!({"i": 1, "twist": -2, "dim": run.h1}));
    r.output("curve", generator_strings(c));
    r.check("sing(omega) = C", run.sing_ok);
    r.check_detail(
        &format!("chern(F) = (0, {charge}, 0)"),
        run.chern == Some([0, charge, 0]),
        run.chern.map_or("not computed".into(), |c| format!("({}, {}, {})", c[0], c[1], c[2])),
    );
    r.check_detail("h^1(F(-2)) = 0", run.h1 == Some(0), run.h1.map_or("not computed".into(), |h| h.to_string()));
}

fn certified(run: &InstantonRun, charge: i64) -> bool {
    run.sing_ok && run.chern == Some([0, charge, 0]) && run.h1 == Some(0)
}

fn instanton_4(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = None;
    for attempt in 0..=INSTANTON_RETRIES {
        let lines = dist::random_disjoint_lines_with(5, &mut rng)?;
        let c = Ideal::intersect_all(&lines);
        let sf = SyzygyForms::new(&c);
        let space = sf.form_space(2, 3)?;
        let run = instanton_candidate(&c, &space, &mut rng)?;
        let done = certified(&run, 4);
        last = Some((lines, c, sf, space, run, attempt));
        if done {
            break;
        }
    }
    let (lines, c, sf, space, run, attempt) = last.expect("at least one attempt");
    let mut r = ScenarioResult::new("instanton-4", inputs(&c, 2, 3, Some(opts.seed)));
    r.output("attempts", attempt + 1);
    r.output("lines", lines.iter().map(|l| generator_strings(l).join(", ")).collect::<Vec<_>>());
    r.output("betti", betti_json(&sf.resolution().betti()?));
    let disjoint = lines.iter().enumerate().all(|(i, a)| lines[i + 1..].iter().all(|b| a.sum(b).saturate().is_unit()));
    r.check("the 5 lines are pairwise disjoint", disjoint);
    record_instanton(&mut r, &c, &space, &run, 4);
    Ok(r)
}

fn instanton_5(opts: &ExampleOptions) -> Result<ScenarioResult> {
    let (c1, c2) = instanton5_curves();
    let c = c1.intersect(&c2);
    let mut r = ScenarioResult::new("instanton-5", inputs(&c, 2, 3, Some(opts.seed)));
    r.check("saturate(C1 + C2) = (1)", c1.sum(&c2).saturate().is_unit());
    let sf = SyzygyForms::new(&c);
    r.output("betti", betti_json(&sf.resolution().betti()?));
    let space = sf.form_space(2, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut run = instanton_candidate(&c, &space, &mut rng)?;
    let mut attempt = 0;
    while !certified(&run, 5) && attempt < INSTANTON_RETRIES {
        attempt += 1;
        run = instanton_candidate(&c, &space, &mut rng)?;
    }
    r.output("attempts", attempt + 1);
    record_instanton(&mut r, &c, &space, &run, 5);
    Ok(r)
}
