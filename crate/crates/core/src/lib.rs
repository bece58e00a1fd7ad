pub mod aut;
pub mod bitorsors;
pub mod bouquets;
pub mod cohomology;
pub mod extensions;
pub mod group;
pub mod search;
pub mod xmod;
