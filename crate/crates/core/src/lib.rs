//! Groebner bases, syzygies and free resolutions of submodules of free
//! OI-modules over polynomial OI-algebras with rational coefficients.
//!
//! ```
//! use std::sync::Arc;
//! use oigb_core::groebner::{oi_gb, GbOptions};
//! use oigb_core::module::FreeModule;
//! use oigb_core::poly::Algebra;
//! use oigb_core::resolution::{oi_res, ResOptions};
//! use oigb_core::text::parse_element;
//!
//! let p = Algebra::new(2, "x")?;
//! let f = Arc::new(FreeModule::new(p, "e", vec![1, 1])?);
//! let g = parse_element(&f, "x(1,2)*x(1,1)*e(2,{2},1) + x(2,2)*x(2,1)*e(2,{1},2)")?;
//!
//! let gb = oi_gb(&[g], &GbOptions::default())?;
//! assert_eq!(gb.elements.len(), 2);
//! assert_eq!(
//!     gb.elements[1].to_string(),
//!     "x(2,3)*x(2,2)*x(1,1)*e(3,{2},2) - x(2,3)*x(2,1)*x(1,2)*e(3,{1},2)"
//! );
//!
//! let h = parse_element(&f, "x(1,2)*x(1,1)*e(3,{2},1) + x(2,2)*x(2,1)*e(3,{1},2)")?;
//! let r = oi_res(&[h], 3, &ResOptions::default())?;
//! assert_eq!(&r.ranks()[..3], &[1, 2, 4]);
//! # Ok::<(), oigb_core::Error>(())
//! ```

pub mod error;
pub mod groebner;
pub mod module;
pub mod oi;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod resolution;
pub mod syzygy;
pub mod text;

pub use error::{Error, Result};
