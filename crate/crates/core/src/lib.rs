//! Computational kernel for uniform structures on finite frames.
//!
//! Frames are downset lattices of a poset of join-irreducibles
//! ([`frame::FiniteFrame`]), so every lattice computation is exact. On top
//! of that sit covering and entourage uniformities with validated bases
//! ([`uniform::PreUniformLocale`]), the conversions between the two
//! presentations, the uniformly-below relation and admissibility, the
//! uniform reflection ([`reflect`]), and Cauchy-filter completions computed
//! through finite frame presentations ([`present`], [`cauchy`],
//! [`complete`]).
//!
//! Constructors for concrete uniformities live in [`metric`], [`group`] and
//! [`regularity`]. The interval side ([`realopen`], [`realnum`], [`padic`],
//! [`calc`]) provides exact arithmetic on the completed rationals: opens of
//! the line with rational endpoints, interval-refinement oracles for points,
//! and p-adic ball arithmetic.

pub mod calc;
pub mod cauchy;
pub mod complete;
pub mod corpus;
pub mod cover;
pub mod entourage;
pub mod error;
pub mod frame;
pub mod group;
pub mod hom;
pub mod metric;
pub mod padic;
pub mod poset;
pub mod present;
pub mod realnum;
pub mod realopen;
pub mod reflect;
pub mod regularity;
pub mod relation;
pub mod textio;
pub mod uniform;

pub use calc::{evaluate, parse as parse_expression, Expr, Mode};
pub use cauchy::{cauchy_locale, reflect_cauchy, CauchyLocale, CauchyReflection};
pub use complete::{
    check_product_preservation, completion, factor_dense_embedding, functorial_lift, lift_map,
    Completion, LiftOutcome, ProductPreservation,
};
pub use cover::{CoverDownset, CoverUniformity};
pub use entourage::EntourageUniformity;
pub use error::{CoreError, Result};
pub use frame::{FiniteFrame, FrameElement};
pub use group::{
    group_entourage, group_uniformity, FiniteGroup, GroupHom, GroupSide, GroupUniformity,
};
pub use hom::FrameHom;
pub use metric::{is_nonexpansive, metric_uniformity, point_map_hom, MetricSpace, MetricStructure};
pub use padic::{is_prime, p_power, padic_arith, padic_valuation, PAdicBall, RingOp, Valuation};
pub use poset::{IrrSet, Poset};
pub use present::{
    present_frame, FramePresentation, GenMask, Generator, PresRelation, PresentedFrame,
};
pub use realnum::{
    add, embed_rational, mul, neg, real_add, real_mul, real_neg, sub, CauchyReal, RationalInterval,
};
pub use realopen::{
    covered_by_width, cut_to_open, interval_to_cuts, real_uniformly_below, CutGenerator, Lower,
    RealOpen, Span, Upper,
};
pub use reflect::{conucleus, factor_through_unit, uniform_reflection, Reflection};
pub use regularity::{rather_below, strong_regularity_uniformity};
pub use relation::{coproduct_hom, product_right_adjoint, ProductFrame, Relation};
pub use textio::{
    dump_locale, dump_structure, parse_locale, parse_map, resolve_map, ParsedLocale, ParsedMap,
};
pub use uniform::{
    covers_to_entourages, entourages_to_covers, initial_uniformity, is_uniform_embedding,
    is_uniform_morphism, PreUniformLocale,
};
