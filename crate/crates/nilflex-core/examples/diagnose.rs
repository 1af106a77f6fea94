use nilflex_core::algebra::NilpotentLieAlgebra;
use nilflex_core::cohomology::CohomologyRing;
use nilflex_core::harmonic::FixedSymplecticForm;
use nilflex_core::symplectic::{SampleConfig, SymplecticFamily};

fn main() {
    for structure in ["(0,0,12,13,14,15)", "(0,0,0,12,13,14+23)", "(0,0,0,0,12,14+25)"] {
        let g = NilpotentLieAlgebra::parse(structure).unwrap();
        let ring = CohomologyRing::compute(&g);
        let fam = SymplecticFamily::new(&ring).unwrap();
        let config = SampleConfig::default();
        let l2 = fam.lefschetz_matrix(2);
        let generic = fam.generic_rank(&l2, &config).unwrap();
        let symbolic = l2.matrix.generic_rank_symbolic();
        println!("{structure}: betti={:?}", ring.betti_numbers());
        println!("  generic h4 (sampled+certified) = {generic}, fraction-field rank = {symbolic}");
        // oracle at three points, reporting the full h-vector
        for p in fam.sample_symplectic_points(3, &config).unwrap() {
            let omega = fam.omega_at(&p).unwrap();
            let f = FixedSymplecticForm::new(&g, &omega).unwrap();
            let prof = f.harmonic_profile();
            let ok = f.identity_suite().all_passed();
            println!("  point {:?}: oracle h = {:?} (identities pass: {ok})",
                p.iter().map(|r| r.to_string()).collect::<Vec<_>>(), prof.h);
        }
    }
}
