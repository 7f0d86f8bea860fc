//! Files bundled with the crate: the worked proofs and the regression corpus.

pub const BLASS_CL5: &str = include_str!("../data/blass_cl5.json");
pub const CL15_RECURRENCE_SWAP: &str = include_str!("../data/cl15_recurrence_swap.json");
pub const CL15_CONTRACTION: &str = include_str!("../data/cl15_contraction.json");
pub const CL15_DOUBLE_RECURRENCE: &str = include_str!("../data/cl15_double_recurrence.json");
/// One JSON object per line, the format read by `colkit corpus`.
pub const CORPUS: &str = include_str!("../data/corpus.jsonl");

/// The bundled proof files by name.
pub const PROOFS: [(&str, &str); 4] = [
    ("blass_cl5.json", BLASS_CL5),
    ("cl15_recurrence_swap.json", CL15_RECURRENCE_SWAP),
    ("cl15_contraction.json", CL15_CONTRACTION),
    ("cl15_double_recurrence.json", CL15_DOUBLE_RECURRENCE),
];
