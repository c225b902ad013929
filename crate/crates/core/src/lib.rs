//! Hyperbolic random graphs (KPKVB model and its box/Poissonized/infinite
//! companions): sampling, clustering statistics, and the closed-form limits
//! of the clustering coefficient, clustering function and degree law,
//! together with independent numerical oracles for each of them.

#[cfg(feature = "cli")]
pub mod cli;
pub mod experiment;
pub mod gengraph;
pub mod geom;
pub mod graphstats;
pub mod limits;
pub mod params;
pub mod rng;
pub mod specfun;
