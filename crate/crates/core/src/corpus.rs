//! Descriptors bundled with the crate, used by `selftest` and the tests.

use crate::manifolds::SymplecticFourManifoldDescriptor;

pub const BUNDLED: &[(&str, &str)] = &[
    ("cp2", include_str!("../data/descriptors/cp2.json")),
    ("cp2_blowup", include_str!("../data/descriptors/cp2_blowup.json")),
    ("s2xs2", include_str!("../data/descriptors/s2xs2.json")),
    ("k3", include_str!("../data/descriptors/k3.json")),
    ("dolgachev_k5", include_str!("../data/descriptors/dolgachev_k5.json")),
    ("e2_dk2_level6", include_str!("../data/descriptors/e2_dk2_level6.json")),
    ("e2_dk3_level6", include_str!("../data/descriptors/e2_dk3_level6.json")),
    ("e2_dk4_level8", include_str!("../data/descriptors/e2_dk4_level8.json")),
    ("e2_dk8_level8", include_str!("../data/descriptors/e2_dk8_level8.json")),
];

pub fn bundled() -> Vec<(&'static str, SymplecticFourManifoldDescriptor)> {
    BUNDLED
        .iter()
        .map(|(id, text)| {
            let desc = SymplecticFourManifoldDescriptor::from_json(text)
                .unwrap_or_else(|e| panic!("bundled descriptor {id} is malformed: {e}"));
            (*id, desc)
        })
        .collect()
}

pub fn bundled_by_id(id: &str) -> Option<SymplecticFourManifoldDescriptor> {
    bundled().into_iter().find(|(i, _)| *i == id).map(|(_, d)| d)
}
