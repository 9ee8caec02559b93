#![allow(dead_code)]

use std::sync::Arc;

use oigb_core::module::{FreeModule, ModuleElement};
use oigb_core::poly::Algebra;
use oigb_core::text::parse_element;

pub const B1: &str = "x(1,1)*e(1,{1},1) + x(2,1)*e(1,{1},2)";
pub const B2: &str = "x(1,2)*x(1,1)*e(2,{2},2) + x(2,2)*x(2,1)*e(2,{1,2},3)";
pub const B3: &str = "x(2,3)*x(2,2)*x(1,1)*e(3,{2,3},3) - x(2,3)*x(2,1)*x(1,2)*e(3,{1,3},3)";

pub const F: &str = "x(1,2)*x(1,1)*e(2,{2},1) + x(2,2)*x(2,1)*e(2,{1},2)";
pub const G: &str = "x(2,3)*x(2,2)*x(1,1)*e(3,{2},2) - x(2,3)*x(2,1)*x(1,2)*e(3,{1},2)";
pub const SYZ: [&str; 3] = [
    "x(1,2)*d(3,{1,3},1) - x(1,1)*d(3,{2,3},1) + d(3,{1,2,3},2)",
    "x(2,4)*d(4,{1,2,3},2) - x(2,3)*d(4,{1,2,4},2)",
    "x(1,2)*d(4,{1,3,4},2) - x(1,1)*d(4,{2,3,4},2) - x(1,3)*d(4,{1,2,4},2)",
];

/// `F^{OI,1} ⊕ F^{OI,1} ⊕ F^{OI,2}` over `P^2` with `b1, b2`.
pub fn gb_example() -> (Arc<FreeModule>, Vec<ModuleElement>) {
    let alg = Algebra::new(2, "x").unwrap();
    let m = Arc::new(FreeModule::new(alg, "e", vec![1, 1, 2]).unwrap());
    let b = vec![parse_element(&m, B1).unwrap(), parse_element(&m, B2).unwrap()];
    (m, b)
}

/// `F^{OI,1} ⊕ F^{OI,1}` over `P^2` with `f`.
pub fn syz_example() -> (Arc<FreeModule>, ModuleElement) {
    let alg = Algebra::new(2, "x").unwrap();
    let m = Arc::new(FreeModule::new(alg, "e", vec![1, 1]).unwrap());
    let f = parse_element(&m, F).unwrap();
    (m, f)
}

/// The width-3 variant of `f` used for the resolution.
pub const F3: &str = "x(1,2)*x(1,1)*e(3,{2},1) + x(2,2)*x(2,1)*e(3,{1},2)";

pub fn res_example() -> (Arc<FreeModule>, ModuleElement) {
    let (m, _) = syz_example();
    let f = parse_element(&m, F3).unwrap();
    (m, f)
}

pub fn strings(elements: &[ModuleElement]) -> Vec<String> {
    elements.iter().map(|e| e.to_string()).collect()
}
pub mod props;
