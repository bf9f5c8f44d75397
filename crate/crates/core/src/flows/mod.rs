//! Exact enumeration of integral flows, group-valued flows, and totally
//! cyclic orientations.

pub mod engine;
pub mod group;
pub mod orientation;

pub use engine::{
    count_flows, count_nowhere_zero, count_weak, enumerate_int_flows, flow_count_table, is_flow,
    FlowCounts, FlowSpace,
};
pub use group::{count_group_flows, groups_of_order, FiniteAbelianGroup, GroupFlowCounts};
pub use orientation::{
    compatible_tc_count, count_totally_cyclic, is_totally_cyclic, reciprocity_rhs,
    totally_cyclic_orientations,
};
