use eisgen::residue::*;
use eisgen::character::*;
use eisgen::bernoulli::*;

fn main() {
    let r = ResidueRing::new(37, 2).unwrap();
    for j in [32i64, 2] {
        let theta = DirichletCharacter::omega_power(j, r);
        match check_hypotheses(1, &theta, &r) {
            Ok(rep) => println!("theta=w^{j}: {rep:?}"),
            Err(e) => println!("theta=w^{j}: ERR {e}"),
        }
    }
    let r13 = ResidueRing::new(13, 1).unwrap();
    for k in (2..=10u64).step_by(2) {
        let theta = DirichletCharacter::omega_power(k as i64, r13);
        match check_hypotheses(1, &theta, &r13) {
            Ok(rep) => println!("p13 k={k}: d={} e={}", rep.d, rep.e),
            Err(e) => println!("p13 k={k}: ERR {e}"),
        }
    }
}
