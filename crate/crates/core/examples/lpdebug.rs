use covnum::lp::{BitMat, CoverLp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for trial in 0..5u64 {
        let rows = 120 + trial as usize * 30;
        let cols = 2 * rows + 50;
        let dens = 0.3 + 0.1 * trial as f64;
        let mut bits = vec![vec![false; cols]; rows];
        for row in bits.iter_mut() {
            for b in row.iter_mut() {
                *b = rng.gen_bool(dens);
            }
            if !row.iter().any(|&b| b) {
                row[rng.gen_range(0..cols)] = true;
            }
        }
        let b2 = bits.clone();
        let mut lp = CoverLp::from_fn(rows, cols, move |i, j| b2[i][j], vec![1.0; rows]).unwrap();
        let t0 = std::time::Instant::now();
        match lp.solve() {
            Ok(sol) => println!(
                "trial {trial}: {}x{} dens {dens:.1}: value {:.9} iters {} mode {:?} bland {} ({:?})",
                rows, cols, sol.primal_value, sol.iterations, sol.mode, sol.used_bland, t0.elapsed()
            ),
            Err(e) => println!("trial {trial}: {}x{} dens {dens:.1}: ERROR {e}", rows, cols),
        }
    }
}
