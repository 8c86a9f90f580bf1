#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spantree/geometry.hpp"

namespace spantree {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

enum class Boundary { Free, Wired };

/* Closed annular shell r <= |x - center| <= R with one condition per side.
 * r == 0 degenerates to the disc B(center, R) with no inner side. */
struct AnnulusSpec {
    Vec2 center;
    double r = 0.0;
    double R = 0.0;
    Boundary inner = Boundary::Free;
    Boundary outer = Boundary::Free;

    double aspect() const { return r > 0.0 ? R / r : 0.0; }
    bool in_shell(Vec2 p) const {
        double d2 = dist2(p, center);
        return d2 >= r * r && d2 <= R * R;
    }
};

/**
 * Finite planar graph with geometric vertex positions.
 *
 * Vertices 0..coords.size()-1 carry coordinates; when wired() the extra
 * super-vertex is the last index and has none.  Wired edges are stored as
 * (lattice endpoint, wired vertex) and keep the position the deleted outside
 * endpoint had (`tip`), which is what embeds them for dualization.  Instances
 * are immutable once a builder returns them.
 */
class RegionGraph {
  public:
    struct Edge {
        VertexId a = -1;
        VertexId b = -1;
        double length = 0.0;
        Vec2 tip; // position of endpoint b as embedded (== coords[b] unless b is wired)
    };

    std::vector<Vec2> coords;
    std::vector<Edge> edges;
    std::vector<VertexId> inner_free; // sorted; vertices on the inner free boundary
    std::vector<VertexId> outer_free; // sorted; outer free boundary (a box has only this one)
    Vec2 anchor;                      // region center, used to orient embeddings
    double delta = 0.0;               // lattice spacing (0 for non-lattice graphs)
    std::optional<AnnulusSpec> annulus; // set when built from an annulus spec

    bool wired() const { return wired_; }
    VertexId wired_vertex() const { return wired_ ? static_cast<VertexId>(coords.size()) : -1; }
    std::int32_t vertex_count() const {
        return static_cast<std::int32_t>(coords.size()) + (wired_ ? 1 : 0);
    }
    std::int32_t edge_count() const { return static_cast<std::int32_t>(edges.size()); }
    bool has_coord(VertexId v) const { return v >= 0 && v < static_cast<VertexId>(coords.size()); }

    // CSR adjacency over the multigraph.
    struct Arc {
        VertexId to;
        EdgeId edge;
    };
    std::int32_t degree(VertexId v) const { return adj_off_[v + 1] - adj_off_[v]; }
    const Arc* arcs_begin(VertexId v) const { return adj_.data() + adj_off_[v]; }
    const Arc* arcs_end(VertexId v) const { return adj_.data() + adj_off_[v + 1]; }

    // Builders call this once; it freezes the adjacency structure.
    void finalize(bool wired);
    bool is_connected() const;

  private:
    bool wired_ = false;
    std::vector<std::int32_t> adj_off_;
    std::vector<Arc> adj_;
};

/* Lattice graphs on delta * Z^2.  Shell membership is closed on both sides.
 * Throws std::invalid_argument when delta is too coarse for the region or the
 * resulting graph is empty or disconnected. */
RegionGraph build_lattice_annulus(double delta, const AnnulusSpec& spec);
RegionGraph build_lattice_box(double delta, const Rect& rect, Boundary bc);

/* Combinatorial embedding: per vertex, the outgoing half-edges in
 * counterclockwise order.  Half-edge 2*e points a->b, 2*e+1 points b->a. */
struct Embedding {
    std::vector<std::vector<std::int32_t>> rot;
};

/**
 * Planar dual.  Edge i of the primal corresponds to edge to_dual[i] of the
 * dual and back via to_primal (dual-of-dual composes to the identity).  For
 * an annulus with exactly one wired side the dual is tagged with the swapped
 * roles: the face across the free side becomes the dual wired vertex and the
 * faces incident to the primal super-vertex become the dual free boundary.
 */
struct PlanarDual {
    RegionGraph dual;
    std::vector<EdgeId> to_dual;
    std::vector<EdgeId> to_primal;
    Embedding dual_embedding;
    std::vector<VertexId> face_left;  // face on the left of half-edge 2e (a->b)
    std::vector<VertexId> face_right; // face on the left of half-edge 2e+1
};

PlanarDual planar_dual(const RegionGraph& g);
PlanarDual planar_dual(const RegionGraph& g, const Embedding& embedding);

// Embedding derived from the geometric layout (lattice graphs and other
// straight-line embedded graphs).
Embedding geometric_embedding(const RegionGraph& g);

} // namespace spantree
