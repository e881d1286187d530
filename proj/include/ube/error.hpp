#pragma once

#include <stdexcept>
#include <string>

namespace ube {

enum class Errc {
    cycle_detected,
    duplicate_edge,
    duplicate_vertex,
    unknown_vertex,
    self_loop,
    disconnected,
    not_outerplanar,
    overlapping_supports,
    vertex_absent,
    precondition_violated,
    domain_mismatch,
    not_one_sided,
    not_fan,
    edge_is_st,
    not_st_outerpath,
    not_primary,
    ineligible_edge,
    attach_edge_conflict,
    not_outerpath,
    not_triangulated,
    not_biconnected,
    multi_source_sink,
    block_not_st_dag,
    not_cactus,
    anchor_not_source_or_sink,
    bimodality_violation,
    too_large,
    exceeds_bound,
    not_topological,
    invalid_k,
    infeasible_spec,
    resource_limit,
    no_page_equivalent_triple,
    internal_invariant,
    parse_error,
    io_failure,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::duplicate_vertex: return "DuplicateVertex";
    case Errc::unknown_vertex: return "UnknownVertex";
    case Errc::self_loop: return "SelfLoop";
    case Errc::disconnected: return "Disconnected";
    case Errc::not_outerplanar: return "NotOuterplanar";
    case Errc::overlapping_supports: return "OverlappingSupports";
    case Errc::vertex_absent: return "VertexAbsent";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::not_one_sided: return "NotOneSided";
    case Errc::not_fan: return "NotFan";
    case Errc::edge_is_st: return "EdgeIsSt";
    case Errc::not_st_outerpath: return "NotStOuterpath";
    case Errc::not_primary: return "NotPrimary";
    case Errc::ineligible_edge: return "IneligibleEdge";
    case Errc::attach_edge_conflict: return "AttachEdgeConflict";
    case Errc::not_outerpath: return "NotOuterpath";
    case Errc::not_triangulated: return "NotTriangulated";
    case Errc::not_biconnected: return "NotBiconnected";
    case Errc::multi_source_sink: return "MultiSourceSink";
    case Errc::block_not_st_dag: return "BlockNotStDag";
    case Errc::not_cactus: return "NotCactus";
    case Errc::anchor_not_source_or_sink: return "AnchorNotSourceOrSink";
    case Errc::bimodality_violation: return "BimodalityViolation";
    case Errc::too_large: return "TooLarge";
    case Errc::exceeds_bound: return "ExceedsBound";
    case Errc::not_topological: return "NotTopological";
    case Errc::invalid_k: return "InvalidK";
    case Errc::infeasible_spec: return "InfeasibleSpec";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::no_page_equivalent_triple: return "NoPageEquivalentTriple";
    case Errc::internal_invariant: return "InternalInvariant";
    case Errc::parse_error: return "ParseError";
    case Errc::io_failure: return "IoFailure";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the contract that was broken.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

inline void invariant(bool cond, const std::string& what) {
    if (!cond) fail(Errc::internal_invariant, what);
}

} // namespace ube
