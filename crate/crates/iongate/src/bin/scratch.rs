//! Temporary convention-adjudication experiments. Not part of the deliverable.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use iongate::hamiltonian::{
    decay_term_atom, effective_hamiltonian, full_hamiltonian, laser_term, CoeffAtom, PulseConfig,
    TermOrder, TermSum,
};
use iongate::hilbert::{
    atomic_pair, embed_product, ladder_ops, level_op, level_proj, rr_projector, AtomId, AtomLevel,
    BasisState, JointBasis,
};
use iongate::params::{derive_couplings, SystemParams};
use iongate::propagator::{evolve, propagator_matrix, StateVector};

const TAU: f64 = std::f64::consts::TAU;
const PI: f64 = std::f64::consts::PI;

fn cc(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn flip_pi0_sign(h: &mut TermSum<f64>) {
    for term in &mut h.terms {
        if term.label.starts_with("mediated_rabi") {
            for atom in &mut term.coeff {
                if atom.freq == 0.0 && atom.power == 0 {
                    atom.amp = -atom.amp;
                }
            }
        }
    }
}

fn fro_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn phonon_dist(basis: &JointBasis, amps: &Array1<C64>) -> Vec<f64> {
    let mut p = vec![0.0; basis.phonon_dim()];
    for (i, a) in amps.iter().enumerate() {
        p[basis.state_at(i).n] += a.norm_sqr();
    }
    p
}

fn rr_population(basis: &JointBasis, amps: &Array1<C64>) -> f64 {
    basis
        .states()
        .zip(amps.iter())
        .filter(|(s, _)| s.a1 == AtomLevel::Rydberg && s.a2 == AtomLevel::Rydberg)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

#[derive(Copy, Clone, PartialEq, Debug)]
enum MedRabi {
    None,
    PaperSign,
    DerivedSign,
    /// Bounded polaron-residual form: coefficient ∝ (1 − e^{∓iωt}).
    Polaron,
}

#[derive(Copy, Clone, PartialEq, Debug)]
enum DecayModel {
    None,
    ActiveAtom(f64),
    BothAlways(f64),
}

/// Reduced pulse-frame Hamiltonian: resonant laser on the driven atom (all
/// diagonal shifts compensated), optional mediated-Rabi term, pair terms on
/// |rr>, decay.
fn reduced_pulse_h(
    params: &SystemParams<f64>,
    atom: AtomId,
    rr: bool,
    med: MedRabi,
    med_rr_sign: f64, // +1 geometric (repulsive), -1 spec-literal (attractive)
    decay: DecayModel,
) -> TermSum<f64> {
    let basis = JointBasis::new(params.n_max);
    let d = derive_couplings(params).unwrap();
    let omega = params.omega_i;
    let (rabi, _v0, u_signed) = match atom {
        AtomId::Atom1 => (params.rabi1, d.v0_1, d.u0_1 * params.z1.signum()),
        AtomId::Atom2 => (params.rabi2, d.v0_2, d.u0_2 * params.z2.signum()),
    };
    let mut h = laser_term(&basis, atom, rabi, 0.0);
    // mediated Rabi: prefactor -i u Ω/4, bracket per variant
    if med != MedRabi::None && u_signed != 0.0 {
        let (a, adag) = ladder_ops::<f64>(basis.n_max);
        let flip = {
            let f = &level_op::<f64>(AtomLevel::Rydberg, AtomLevel::One)
                - &level_op::<f64>(AtomLevel::One, AtomLevel::Rydberg);
            let eye3 = Array2::from_diag_elem(3, cc(1.0, 0.0));
            match atom {
                AtomId::Atom1 => atomic_pair(&f, &eye3),
                AtomId::Atom2 => atomic_pair(&eye3, &f),
            }
        };
        let p = cc(0.0, -1.0) * cc(u_signed * rabi / 4.0, 0.0);
        let inv_s2 = cc(1.0 / 2.0_f64.sqrt(), 0.0);
        let inv_s2w = inv_s2 / cc(omega, 0.0);
        let (coeff_a, coeff_adag) = match med {
            MedRabi::PaperSign | MedRabi::DerivedSign => {
                let s = if med == MedRabi::PaperSign { 1.0 } else { -1.0 };
                (
                    vec![
                        CoeffAtom { amp: p * inv_s2, power: 1, freq: -omega },
                        CoeffAtom { amp: p * cc(0.0, -1.0) * inv_s2w, power: 0, freq: -omega },
                        CoeffAtom { amp: p * cc(0.0, -s) * inv_s2w, power: 0, freq: 0.0 },
                    ],
                    vec![
                        CoeffAtom { amp: p * inv_s2, power: 1, freq: omega },
                        CoeffAtom { amp: p * cc(0.0, 1.0) * inv_s2w, power: 0, freq: omega },
                        CoeffAtom { amp: p * cc(0.0, s) * inv_s2w, power: 0, freq: 0.0 },
                    ],
                )
            }
            MedRabi::Polaron => {
                // residual after exact displacement: ∝ (1 − e^{∓iωt}) / ω, bounded
                let q = cc(u_signed * rabi / (2.0 * 2.0_f64.sqrt() * omega), 0.0);
                (
                    vec![
                        CoeffAtom { amp: q, power: 0, freq: 0.0 },
                        CoeffAtom { amp: -q, power: 0, freq: -omega },
                    ],
                    vec![
                        CoeffAtom { amp: q, power: 0, freq: 0.0 },
                        CoeffAtom { amp: -q, power: 0, freq: omega },
                    ],
                )
            }
            MedRabi::None => unreachable!(),
        };
        h.push("med_a", TermOrder::Second, coeff_a, embed_product(&basis, &flip, &a));
        h.push("med_adag", TermOrder::Second, coeff_adag, embed_product(&basis, &flip, &adag));
    }
    if rr {
        let u1 = d.u0_1 * params.z1.signum();
        let u2 = d.u0_2 * params.z2.signum();
        let amp_med = -med_rr_sign * (u1 * u2 / omega).abs() * (u1 * u2).signum() * 1.0;
        // geometric: -(u1 u2/ω)(1-cos) with signed u's; med_rr_sign=-1 flips
        let amp = if med_rr_sign > 0.0 { -(u1 * u2) / omega } else { (u1 * u2) / omega };
        let _ = amp_med;
        h.push(
            "vdw_mediated",
            TermOrder::Second,
            vec![
                CoeffAtom { amp: cc(amp, 0.0), power: 0, freq: 0.0 },
                CoeffAtom { amp: cc(-amp / 2.0, 0.0), power: 0, freq: omega },
                CoeffAtom { amp: cc(-amp / 2.0, 0.0), power: 0, freq: -omega },
            ],
            rr_projector(&basis),
        );
        h.push(
            "vdw_direct",
            TermOrder::Zeroth,
            vec![CoeffAtom { amp: cc(d.v_rr_direct, 0.0), power: 0, freq: 0.0 }],
            rr_projector(&basis),
        );
    }
    match decay {
        DecayModel::None => {}
        DecayModel::ActiveAtom(g) => h.extend(decay_term_atom(&basis, atom, g)),
        DecayModel::BothAlways(g) => {
            h.extend(decay_term_atom(&basis, AtomId::Atom1, g));
            h.extend(decay_term_atom(&basis, AtomId::Atom2, g));
        }
    }
    h
}

struct ProtocolResult {
    fidelity: f64,
    state_fid_11: f64,
    theta_minus_pi: f64,
    theta1: f64,
    blockade_max: f64,
    p12_end1: f64,
    p12_end3: f64,
    mag_diag: [f64; 4],
    map10_mag: f64,
    map10_phase: f64,
}

fn run_reduced_protocol(
    params: &SystemParams<f64>,
    med: MedRabi,
    med_rr_sign: f64,
    decay: DecayModel,
) -> ProtocolResult {
    let basis = JointBasis::new(params.n_max);
    let dt = (TAU / params.omega_i) / 1000.0;
    let t_pi = PI / params.rabi1;
    let t_2pi = TAU / params.rabi2;
    let pulses = [
        (reduced_pulse_h(params, AtomId::Atom1, false, med, med_rr_sign, decay), t_pi),
        (reduced_pulse_h(params, AtomId::Atom2, true, med, med_rr_sign, decay), t_2pi),
        (reduced_pulse_h(params, AtomId::Atom1, false, med, med_rr_sign, decay), t_pi),
    ];
    let labels = ["00", "01", "10", "11"];
    let mut u = Array2::<C64>::zeros((4, 4));
    let mut blockade_max = 0.0f64;
    let mut theta1 = 0.0;
    let mut p12_end1 = 0.0;
    let mut p12_end3 = 0.0;
    let mut map10 = cc(0.0, 0.0);
    for (j, lab) in labels.iter().enumerate() {
        let a1 = AtomLevel::from_char(lab.chars().next().unwrap()).unwrap();
        let a2 = AtomLevel::from_char(lab.chars().nth(1).unwrap()).unwrap();
        let mut psi = StateVector::basis_state(basis, BasisState { a1, a2, n: 0 });
        for (k, (h, dur)) in pulses.iter().enumerate() {
            let (out, trace) = evolve(&psi, h, 0.0, *dur, dt).unwrap();
            if j == 3 && k == 1 {
                for amps in &trace.amplitudes {
                    blockade_max = blockade_max.max(rr_population(&basis, amps));
                }
                let s_r1 = BasisState { a1: AtomLevel::Rydberg, a2: AtomLevel::One, n: 0 };
                theta1 = (out.amplitude(s_r1) / psi.amplitude(s_r1)).arg();
            }
            if j == 3 && k == 0 {
                let pd = phonon_dist(&basis, &out.amplitudes);
                p12_end1 = pd[1] + pd[2];
            }
            if j == 2 && k == 0 {
                map10 = out.amplitude(BasisState {
                    a1: AtomLevel::Rydberg,
                    a2: AtomLevel::Zero,
                    n: 0,
                });
            }
            psi = out;
            psi.time = 0.0;
        }
        if j == 3 {
            let pd = phonon_dist(&basis, &psi.amplitudes);
            p12_end3 = pd[1] + pd[2];
        }
        for (k, lab_k) in labels.iter().enumerate() {
            let b1 = AtomLevel::from_char(lab_k.chars().next().unwrap()).unwrap();
            let b2 = AtomLevel::from_char(lab_k.chars().nth(1).unwrap()).unwrap();
            u[[k, j]] = psi.amplitude(BasisState { a1: b1, a2: b2, n: 0 });
        }
    }
    let theta = u[[3, 3]].arg() - u[[0, 0]].arg();
    let up = Array2::from_diag(&Array1::from(vec![
        cc(1.0, 0.0),
        cc(-1.0, 0.0),
        cc(-1.0, 0.0),
        cc(-1.0, 0.0),
    ]));
    let m = up.t().mapv(|x| x.conj()).dot(&u);
    let tr_m: C64 = m.diag().iter().sum();
    let tr_mmdag: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    ProtocolResult {
        fidelity: (tr_mmdag + tr_m.norm_sqr()) / 20.0,
        state_fid_11: u[[3, 3]].norm_sqr(),
        theta_minus_pi: theta - PI,
        theta1,
        blockade_max,
        p12_end1,
        p12_end3,
        mag_diag: [u[[0, 0]].norm(), u[[1, 1]].norm(), u[[2, 2]].norm(), u[[3, 3]].norm()],
        map10_mag: map10.norm(),
        map10_phase: map10.arg(),
    }
}

/// Direct 2-D Simpson evaluation of phi2 = -(i/2)∬ [H(t'),H(t'')] dt'' dt'.
fn phi2_simpson(h: &TermSum<f64>, t: f64, n: usize) -> Array2<C64> {
    let dim = h.dim();
    let n = if n % 2 == 0 { n } else { n + 1 };
    let dt = t / n as f64;
    let hs: Vec<Array2<C64>> = (0..=n).map(|k| h.eval(k as f64 * dt)).collect();
    let w = |k: usize, n: usize| -> f64 {
        if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut acc = Array2::<C64>::zeros((dim, dim));
    for kp in 2..=n {
        // inner integral over t'' in [0, t'] with t' = kp*dt, Simpson needs even count
        let m = kp;
        let m = if m % 2 == 0 { m } else { continue };
        let mut inner = Array2::<C64>::zeros((dim, dim));
        for kq in 0..=m {
            let comm = hs[kp].dot(&hs[kq]) - hs[kq].dot(&hs[kp]);
            inner = inner + comm.mapv(|x| x * w(kq, m) * (dt / 3.0));
        }
        acc = acc + inner.mapv(|x| x * w(kp, n) * (dt / 3.0) * if kp == n { 1.0 } else { 1.0 });
    }
    // outer Simpson over even kp only (stride 2): weights on coarse grid of n/2 panels
    // redo cleanly: outer grid points kp = 0,2,4,..,n with step 2dt
    let mut acc2 = Array2::<C64>::zeros((dim, dim));
    let n2 = n / 2;
    for j in 0..=n2 {
        let kp = 2 * j;
        let m = kp;
        let mut inner = Array2::<C64>::zeros((dim, dim));
        if m >= 2 {
            for kq in 0..=m {
                let comm = hs[kp].dot(&hs[kq]) - hs[kq].dot(&hs[kp]);
                inner = inner + comm.mapv(|x| x * w(kq, m) * (dt / 3.0));
            }
        }
        acc2 = acc2 + inner.mapv(|x| x * w(j, n2) * (2.0 * dt / 3.0));
    }
    let _ = acc;
    acc2.mapv(|x| x * cc(0.0, -0.5))
}

fn main() {
    let params = SystemParams::<f64>::rb_ca_default();
    let d = derive_couplings(&params).unwrap();
    let basis = JointBasis::new(params.n_max);
    let t_pulse = PI / params.rabi1;
    let dt = (TAU / params.omega_i) / 1000.0;

    // E0: tiny-coupling sanity — full H with c4 scaled down 1e4: expect clean pi pulse
    {
        let mut p = params.clone();
        p.c4 = params.c4 * 1e-4;
        let dd = derive_couplings(&p).unwrap();
        p.detuning1 = dd.v0_1;
        p.detuning2 = dd.v0_2;
        let h = iongate::hamiltonian::full_hamiltonian_config(
            &p,
            PulseConfig::single(AtomId::Atom1, false),
        )
        .unwrap();
        let psi0 = StateVector::basis_state(
            basis,
            BasisState { a1: AtomLevel::One, a2: AtomLevel::Zero, n: 0 },
        );
        let (psi1, _) = evolve(&psi0, &h, 0.0, t_pulse, dt).unwrap();
        let a = psi1.amplitude(BasisState { a1: AtomLevel::Rydberg, a2: AtomLevel::Zero, n: 0 });
        println!("E0 tiny-c4 FULL pulse1: |C| = {:.6} arg = {:.4} (want 1, -1.5708)", a.norm(), a.arg());
    }

    // E9: phi2 numeric (Simpson) vs analytic mediated term, both pi0 signs.
    // Single-atom laser+phonon only system, paper couplings, t = half ion period.
    {
        let mut p = params.clone();
        p.n_max = 3;
        let b3 = JointBasis::new(3);
        let dd = derive_couplings(&p).unwrap();
        let u1 = dd.u0_1 * p.z1.signum();
        // Build H = laser1 + phonon coupling of atom1 only (no statics: compensated)
        let mut h = laser_term(&b3, AtomId::Atom1, p.rabi1, 0.0);
        let (a, adag) = ladder_ops::<f64>(3);
        let pr = level_proj::<f64>(AtomLevel::Rydberg);
        let eye3 = Array2::from_diag_elem(3, cc(1.0, 0.0));
        let pair = atomic_pair(&pr, &eye3);
        let amp = cc(u1 / 2.0_f64.sqrt(), 0.0);
        h.push(
            "ph_a",
            TermOrder::First,
            vec![CoeffAtom { amp, power: 0, freq: -p.omega_i }],
            embed_product(&b3, &pair, &a),
        );
        h.push(
            "ph_adag",
            TermOrder::First,
            vec![CoeffAtom { amp, power: 0, freq: p.omega_i }],
            embed_product(&b3, &pair, &adag),
        );
        let t = 0.5 * TAU / p.omega_i;
        let phi2 = phi2_simpson(&h, t, 400);
        // analytic phi2 mediated part: -(i u Ω/4)(σ+−σ−)⊗ G(t),
        // G(t) = ∫0^t [t'ξ(t') + (π(t')−σ·π(0))/ω] dt'  with σ = ±1
        for sgn in [1.0f64, -1.0] {
            // integrate coefficient atoms exactly
            // a-coeff of integrand: t' e^{-iωt'}/√2 + (-i e^{-iωt'} + σ' i)/ (ω√2)
            // where σ' = +1 for derived(−π0... careful) — do it numerically instead:
            let n = 4000;
            let ddt = t / n as f64;
            let (mut ga, mut gadag) = (cc(0.0, 0.0), cc(0.0, 0.0));
            for k in 0..n {
                let tk = (k as f64 + 0.5) * ddt;
                let e_m = (cc(0.0, -p.omega_i * tk)).exp();
                let e_p = (cc(0.0, p.omega_i * tk)).exp();
                // bracket a-coeff: tk e^{-iωtk} + (-i e^{-iωtk} + sgn*(-i)) / ω   (all /√2)
                // paper: [ξt + π(t)/ω + π(0)/ω]: a-coeff = tk e_m + (-i e_m)/ω + (-i)/ω
                // derived: + (-i e_m)/ω - (-i)/ω
                let pa = cc(tk, 0.0) * e_m
                    + cc(0.0, -1.0 / p.omega_i) * e_m
                    + cc(0.0, -sgn / p.omega_i);
                let padag = cc(tk, 0.0) * e_p
                    + cc(0.0, 1.0 / p.omega_i) * e_p
                    + cc(0.0, sgn / p.omega_i);
                ga += pa * ddt / 2.0_f64.sqrt();
                gadag += padag * ddt / 2.0_f64.sqrt();
            }
            let pref = cc(0.0, -1.0) * cc(u1 * p.rabi1 / 4.0, 0.0);
            let flip = {
                let f = &level_op::<f64>(AtomLevel::Rydberg, AtomLevel::One)
                    - &level_op::<f64>(AtomLevel::One, AtomLevel::Rydberg);
                atomic_pair(&f, &eye3)
            };
            let med = embed_product(&b3, &flip, &a).mapv(|x| x * pref * ga)
                + embed_product(&b3, &flip, &adag).mapv(|x| x * pref * gadag);
            // phonon-phonon part of phi2 (exact same both signs): quadratic+... compute numerically too
            // subtract it by comparing only the (σ+−σ−) off-diagonal block instead:
            // project: elements 〈r?,n'|·|1?,n〉 -- compare med vs phi2 on that block.
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..b3.dim() {
                for jj in 0..b3.dim() {
                    let si = b3.state_at(i);
                    let sj = b3.state_at(jj);
                    let offdiag = (si.a1 == AtomLevel::Rydberg && sj.a1 == AtomLevel::One)
                        || (si.a1 == AtomLevel::One && sj.a1 == AtomLevel::Rydberg);
                    if offdiag && si.n != sj.n {
                        num += (phi2[[i, jj]] - med[[i, jj]]).norm_sqr();
                        den += phi2[[i, jj]].norm_sqr();
                    }
                }
            }
            let tag = if sgn > 0.0 { "paper  +pi0" } else { "derived -pi0" };
            println!(
                "E9 phi2 sideband-block rel deviation [{}] = {:.3e}",
                tag,
                (num / den).sqrt()
            );
        }
    }

    // E8: gate-model matrix
    println!("\nE8 reduced-model protocol matrix (F / statefid / th-pi / th1 / blk / P12end1 / P12end3):");
    let gam = 1.0e4;
    for med in [MedRabi::None, MedRabi::PaperSign, MedRabi::DerivedSign, MedRabi::Polaron] {
        for med_rr_sign in [1.0, -1.0] {
            for decay in [
                DecayModel::None,
                DecayModel::ActiveAtom(gam),
                DecayModel::BothAlways(gam),
                DecayModel::ActiveAtom(TAU * gam),
            ] {
                let r = run_reduced_protocol(&params, med, med_rr_sign, decay);
                println!(
                    "  med={:<12?} rrsign={:+.0} decay={:<22} F={:.4} sf={:.4} th-pi={:+.3} th1={:+.3} blk={:.2e} P12@1={:.1e} P12@3={:.1e} |U|=[{:.3},{:.3},{:.3},{:.3}] map10=({:.4},{:+.3})",
                    med, med_rr_sign, format!("{:?}", decay),
                    r.fidelity, r.state_fid_11, r.theta_minus_pi, r.theta1,
                    r.blockade_max, r.p12_end1, r.p12_end3,
                    r.mag_diag[0], r.mag_diag[1], r.mag_diag[2], r.mag_diag[3],
                    r.map10_mag, r.map10_phase,
                );
            }
        }
    }

    // E6: contrast with c4 = 0 (direct-only blockade)
    {
        let mut p = params.clone();
        p.c4 = 0.0;
        p.detuning1 = 0.0;
        p.detuning2 = 0.0;
        let r = run_reduced_protocol(&p, MedRabi::None, 1.0, DecayModel::None);
        println!("\nE6 contrast c4=0: blockade max = {:.4}", r.blockade_max);
        // and with c6 at the GHz reading (1000x smaller)
        let mut p2 = p.clone();
        p2.c6 = p.c6 / 1000.0;
        let r2 = run_reduced_protocol(&p2, MedRabi::None, 1.0, DecayModel::None);
        println!("E6b contrast c4=0, c6 GHz-reading: blockade max = {:.4}", r2.blockade_max);
    }

    // E3c: literal-z scaling, asymptotic grid, Eq.5-faithful effective (derived and paper sign)
    println!("\nE3c literal-z slopes, beta grid {{0.005, 0.0025, 0.00125, 0.000625}}:");
    let d0 = d.clone();
    for (name, flip) in [("paper  +pi0", false), ("derived -pi0", true)] {
        let mut devs = Vec::new();
        let mut betas = Vec::new();
        for target_beta in [0.005, 0.0025, 0.00125, 0.000625] {
            let mut p = params.clone();
            let z = 4.0 * d0.lambda_i / target_beta;
            p.z1 = z;
            p.z2 = -z;
            let dd = derive_couplings(&p).unwrap();
            p.detuning1 = dd.v0_1;
            p.detuning2 = dd.v0_2;
            let hf = full_hamiltonian(&p).unwrap();
            let mut he = effective_hamiltonian(&p, PulseConfig::both_active()).unwrap();
            if flip {
                flip_pi0_sign(&mut he);
            }
            let uf = propagator_matrix(&hf, 0.0, t_pulse, dt).unwrap();
            let ue = propagator_matrix(&he, 0.0, t_pulse, dt).unwrap();
            devs.push(fro_norm(&(&uf - &ue)));
            betas.push(dd.beta1);
        }
        let mut slopes = Vec::new();
        for k in 1..devs.len() {
            slopes.push((devs[k - 1] / devs[k]).ln() / (betas[k - 1] / betas[k]).ln());
        }
        println!(
            "  [{}] devs = {:?} slopes = {:?}",
            name,
            devs.iter().map(|x| format!("{:.3e}", x)).collect::<Vec<_>>(),
            slopes.iter().map(|s| format!("{:.2}", s)).collect::<Vec<_>>()
        );
    }

    // E3d: same but C4-compensated scaling (v0 fixed)
    println!("\nE3d C4-compensated slopes, beta grid {{0.005, 0.0025, 0.00125, 0.000625}}:");
    for (name, flip) in [("paper  +pi0", false), ("derived -pi0", true)] {
        let mut devs = Vec::new();
        let mut betas = Vec::new();
        for target_beta in [0.005, 0.0025, 0.00125, 0.000625] {
            let mut p = params.clone();
            let z = 4.0 * d0.lambda_i / target_beta;
            let scale = z / params.z1.abs();
            p.z1 = z;
            p.z2 = -z;
            p.c4 = params.c4 * scale.powi(4);
            let dd = derive_couplings(&p).unwrap();
            p.detuning1 = dd.v0_1;
            p.detuning2 = dd.v0_2;
            let hf = full_hamiltonian(&p).unwrap();
            let mut he = effective_hamiltonian(&p, PulseConfig::both_active()).unwrap();
            if flip {
                flip_pi0_sign(&mut he);
            }
            let uf = propagator_matrix(&hf, 0.0, t_pulse, dt).unwrap();
            let ue = propagator_matrix(&he, 0.0, t_pulse, dt).unwrap();
            devs.push(fro_norm(&(&uf - &ue)));
            betas.push(dd.beta1);
        }
        let mut slopes = Vec::new();
        for k in 1..devs.len() {
            slopes.push((devs[k - 1] / devs[k]).ln() / (betas[k - 1] / betas[k]).ln());
        }
        println!(
            "  [{}] devs = {:?} slopes = {:?}",
            name,
            devs.iter().map(|x| format!("{:.3e}", x)).collect::<Vec<_>>(),
            slopes.iter().map(|s| format!("{:.2}", s)).collect::<Vec<_>>()
        );
    }
}
