//! Fock-Goncharov transport matrices of a triangle and their relations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teichkit::snakes::{move_one, move_two, s_matrix, standard_matrix_n3, transport, transport_factors, FGAssignment};
use teichkit::{q, Matrix, Result};

fn main() -> Result<()> {
    for n in 2..=4 {
        let factors: Vec<String> = transport_factors(n, 1)?.iter().map(|f| f.to_string()).collect();
        println!("n = {n}: T1 = {}", factors.join(" "));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let z = FGAssignment::random(3, &mut rng);
    for (k, v) in z.values() {
        println!("Z{}{}{} = {v}", k.0, k.1, k.2);
    }
    let t: Vec<_> = (1..=3).map(|k| transport(&z, k)).collect::<Result<_>>()?;
    for (k, m) in t.iter().enumerate() {
        println!("T{} =\n{m}", k + 1);
    }
    let prod = &(&t[0] * &t[1]) * &t[2];
    println!("T1 T2 T3 = {:?} I", prod.scalar_value());

    // Moves I, II, I from the standard snake give the change of side basis.
    let z111 = z.get((1, 1, 1)).clone();
    let (_, b) = move_one(&Matrix::identity(3))?;
    let (_, b) = move_two(&b, 1, &z111)?;
    let (_, b) = move_one(&b)?;
    println!("S * moves =\n{}", &s_matrix(3) * &b);
    println!("standard matrix =\n{}", standard_matrix_n3(&z111));
    println!("with Z111 = 1:\n{}", standard_matrix_n3(&q(1, 1)));
    Ok(())
}
