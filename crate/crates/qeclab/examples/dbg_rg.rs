use qeclab::codes::{build_named_code, Family};
use qeclab::decode::{Decoder, DecoderKind};
use qeclab::noise::{logical_class, sample_history, ErrorModel, NoiseKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rate(l: usize, p: f64, trials: usize, seed: u64) -> f64 {
    let code = build_named_code(&Family::Toric { l }).unwrap();
    let model = ErrorModel::noise_free_measurement(NoiseKind::BitFlip { p });
    let dec = Decoder::new(DecoderKind::Rg, &code, &model).unwrap();
    let mut fails = 0usize;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(t as u64));
        let rec = sample_history(&code, &model, 1, true, &mut rng);
        let c = dec.decode(&rec).unwrap();
        let resid = rec.true_final_error().mul(&c.pauli).unwrap();
        if c.decoder_failure || !logical_class(&code, &resid).unwrap().is_trivial() {
            fails += 1;
        }
    }
    fails as f64 / trials as f64
}

fn main() {
    for &p in &[0.075, 0.085, 0.09, 0.095, 0.10] {
        let r8 = rate(8, p, 4000, 101);
        let r16 = rate(16, p, 3000, 102);
        let r32 = rate(32, p, 1000, 103);
        println!("p={p:.3}  L8: {r8:.4}  L16: {r16:.4}  L32: {r32:.4}");
    }
}
