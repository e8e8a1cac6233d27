use mlent::decompose::{extremal_witness_search, DetSign};
use mlent::seesaw::{bidecomposable_check, enumerate_bipartitions, seesaw, SeesawConfig, SeesawProblem};
use mlent::statevec::{FactorizationSpec, PureState};
use mlent::constructors;
use num_complex::Complex64;
use std::time::Instant;

fn main() {
    let alpha_neg = ((3.0 + 5f64.sqrt()) / 6.0).sqrt();
    let alpha_pos = ((3.0 + 2.0 * 2f64.sqrt()) / 6.0).sqrt();
    let neg = extremal_witness_search(2, 2, DetSign::Negative, 2024).unwrap();
    let pos = extremal_witness_search(2, 2, DetSign::Positive, 2024).unwrap();
    println!("neg diff {:.2e}", (neg.value-alpha_neg).abs());
    println!("pos diff {:.2e}", (pos.value-alpha_pos).abs());
    let a = 1.0/3f64.sqrt();
    let worst_neg = neg.spectrum.coeffs().iter().zip([a,a,a,0.0]).map(|(g,w)|(g-w).abs()).fold(0.0,f64::max);
    let worst_pos = pos.spectrum.coeffs().iter().zip([0.75f64.sqrt(), a/2.0, a/2.0, a/2.0]).map(|(g,w)|(g-w).abs()).fold(0.0,f64::max);
    println!("worst coeff dev: neg {:.2e} pos {:.2e}", worst_neg, worst_pos);

    let chain = constructors::ququart_chain();
    let cfg = SeesawConfig::default().with_restarts(4).with_max_iters(150).with_seed(606);
    for cut in enumerate_bipartitions(4).unwrap() {
        match bidecomposable_check(&chain, &cut, &cfg) {
            Ok(rep) => println!("cut {}: {} via {:?}", rep.cut, rep.decomposable, rep.certified_by),
            Err(e) => println!("cut {}: ERROR {e}", cut),
        }
    }

    // 7x7 rank-11 seesaw with a bigger budget
    let t0 = Instant::now();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 49 * 49];
    for i in 0..11 { coeffs[i * 49 + i] = Complex64::new(1.0, 0.0); }
    let rank11 = PureState::new(vec![49, 49], coeffs, true).unwrap();
    let problem = SeesawProblem::factorize(rank11, FactorizationSpec::uniform(2, &[7, 7]).unwrap()).unwrap();
    for (restarts, iters) in [(16usize, 600usize), (32, 800)] {
        let cfg = SeesawConfig::default().with_restarts(restarts).with_max_iters(iters).with_seed(303);
        let var = seesaw(&problem, &cfg).unwrap();
        let closed = ((11.0 + 101f64.sqrt()) / 22.0).sqrt();
        println!("7x7 seesaw r{restarts} i{iters}: {:.8} vs {closed:.8} (diff {:.1e}) {:.0}s",
            var.best_overlap, (var.best_overlap-closed).abs(), t0.elapsed().as_secs_f64());
    }
}
