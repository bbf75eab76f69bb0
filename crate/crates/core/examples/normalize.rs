//! Normal forms under the full rewrite set and with some definitions kept folded.
use gauge_logic::cas::{normalize, normalize_with, parse_expr, verify_step, Atom, RewriteSystem, Verdict};

fn main() {
    let potential = parse_expr("mu^2*rho^2 - lambda*rho^4").unwrap();
    println!("potential, expanded about the vacuum:\n{}\n", normalize(&potential));

    let kinetic = parse_expr("(d(dagger(phi)) + i*e*A*dagger(phi))*(d(phi) - i*e*A*phi)").unwrap();
    println!("kinetic term in polar form:\n{}\n", normalize_with(&kinetic, &RewriteSystem::keeping(&[Atom::Rho])));

    let wrong = parse_expr("drho^2").unwrap();
    let claimed = parse_expr("1/4*dchi^2").unwrap();
    match verify_step(&wrong, &claimed) {
        Verdict::Verified => println!("drho^2 = 1/4 dchi^2 holds"),
        Verdict::Mismatch(residual) => println!("drho^2 = 1/4 dchi^2 fails; residual {residual}"),
    }
}
