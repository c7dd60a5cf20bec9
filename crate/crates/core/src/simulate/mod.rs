//! Seeded generators for synthetic functional data.

mod bridge;
mod kl;
mod random_functional;
mod slepian;
mod vehicle;

pub use bridge::{
    bridge_dataset, bridge_increments, brownian_bridge, filtered_bridge, BridgeSpec, KernelSpec,
    SampledKernel,
};
pub use kl::{sample_kl, KlModel, KlSpec};
pub use random_functional::{random_functional_dataset, RandomFunctionalSpec, Template};
pub use slepian::{sample_slepian_gauss, Correlation, SlepianGaussModel};
pub use vehicle::{
    vehicle_dataset, vehicle_response, VehicleParams, VehicleResponse, VehicleSignal,
    VehicleSimSpec,
};
