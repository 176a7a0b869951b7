//! Bundled scenarios.

#[derive(Debug, Clone, Copy)]
pub struct Builtin {
    pub id: &'static str,
    pub description: &'static str,
    pub source: &'static str,
}

macro_rules! builtin {
    ($id:literal, $desc:literal) => {
        Builtin {
            id: $id,
            description: $desc,
            source: include_str!(concat!("../builtins/", $id, ".toml")),
        }
    };
}

const CATALOG: &[Builtin] = &[
    builtin!("root-datum-tables", "dimension profiles of A1, A2, A3, B2, C3, G2"),
    builtin!("root-uniqueness-certificates", "4rho^vee - alpha^vee and 2rho^vee pairings for all types of rank <= 4 and G2"),
    builtin!("gl2-f5-ramakrishna", "GL2 over F5 with q = 3: cohomology, L^unr, L^Ram and the lemma items"),
    builtin!("sl3-f7-ramakrishna", "A2 adjoint module over F7 with q = 2 of Ramakrishna type"),
    builtin!("tame-cyclotomic-f7", "the cyclotomic module k(1) over F7 with q = 3"),
    builtin!("tame-random-modules", "500 seeded tame modules checked against relator and enumeration oracles"),
    builtin!("selmer-procedures", "annihilation, inflation decomposition and avoidance on seeded synthetic systems"),
    builtin!("wiles-specializations", "Wiles differences for A1, A2, B2 over degree 2 and 4 fields"),
    builtin!("numerology-a2", "A2 numerology: CM parameters, large-image bound 29"),
    builtin!("numerology-b2", "B2 numerology: CM parameters, large-image bound 19"),
    builtin!("numerology-iq-gl2", "GL2 over an imaginary quadratic field, nearly ordinary: r = 1"),
    builtin!("sec9-example-a2", "principal SL2 example for A2 at p = 7"),
    builtin!("sec9-example-b2", "principal SL2 example for B2 at p = 7"),
    builtin!("padic-engine", "logarithm, Weierstrass degrees and the parallel functional"),
    builtin!("weights-corpus", "passage dichotomy on 100 seeded weight families"),
    builtin!("weights-parallel", "GL2 family with Teichmuller-constant ratios: parallel weights"),
    builtin!("weights-nonconstant", "one-variable family with nonconstant ratio: sparsity certificate"),
];

pub fn catalog() -> &'static [Builtin] {
    CATALOG
}

pub fn find(id: &str) -> Option<&'static Builtin> {
    CATALOG.iter().find(|b| b.id == id)
}
