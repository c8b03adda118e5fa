use bilocal_core::network::{BlochSetting, MeasurementSettings};
use bilocal_core::states::{TParams, XParams};
use rand::Rng;

pub fn random_valid_t<R: Rng>(rng: &mut R) -> TParams {
    loop {
        let c = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        if let Ok(t) = TParams::new(c[0], c[1], c[2]) {
            return t;
        }
    }
}

pub fn random_separable_t<R: Rng>(rng: &mut R) -> TParams {
    loop {
        let t = random_valid_t(rng);
        if t.abs_sum() <= 1.0 {
            return t;
        }
    }
}

pub fn random_valid_x<R: Rng>(rng: &mut R) -> XParams {
    // uniform simplex weights via sorted-uniform spacings
    let mut cuts = [0.0, rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>(), 1.0];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let w: [f64; 4] = core::array::from_fn(|i| cuts[i + 1] - cuts[i]);
    let outer = rng.gen_range(-1.0..1.0) * (w[0] * w[3]).sqrt();
    let inner = rng.gen_range(-1.0..1.0) * (w[1] * w[2]).sqrt();
    XParams::new(w[0], w[1], w[2], w[3], outer, inner).unwrap()
}

fn random_direction<R: Rng>(rng: &mut R) -> BlochSetting {
    BlochSetting {
        theta: rng.gen_range(0.0..core::f64::consts::PI),
        phi: rng.gen_range(0.0..core::f64::consts::TAU),
    }
}

pub fn random_settings<R: Rng>(rng: &mut R) -> MeasurementSettings {
    MeasurementSettings {
        alice: [random_direction(rng), random_direction(rng)],
        charlie: [random_direction(rng), random_direction(rng)],
    }
}
