#pragma once

#include "germstab/general_position.hpp"
#include "germstab/jet.hpp"
#include "germstab/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace germstab {

/* w = sum w_i d/dy_i along a germ: n jets in the m source variables. */
struct VectorFieldAlongGerm {
    std::vector<Jet> components;

    static VectorFieldAlongGerm zero(int source_dim, int target_dim, int order);
    int order() const { return components.at(0).order(); }
    bool operator==(const VectorFieldAlongGerm&) const = default;
};

/* u = sum u_j d/dx_j on the source: m jets in m variables. */
struct SourceVectorField {
    std::vector<Jet> components;

    static SourceVectorField zero(int source_dim, int order);
    int order() const { return components.at(0).order(); }
    bool operator==(const SourceVectorField&) const = default;
};

/* v = sum v_i d/dy_i on the target: n jets in n variables. */
struct TargetVectorField {
    std::vector<Jet> components;

    static TargetVectorField zero(int target_dim, int order);
    int order() const { return components.at(0).order(); }
    bool operator==(const TargetVectorField&) const = default;
};

/* tf(u) = df(u), the infinitesimal action of source coordinate changes. */
VectorFieldAlongGerm tf_apply(const MapGermJet& f, const SourceVectorField& u);

/* wf(v) = v o f, the infinitesimal action of target coordinate changes. */
VectorFieldAlongGerm wf_apply(const MapGermJet& f, const TargetVectorField& v);

/* A finite multigerm over one target point: s germs into a common Q^n,
   written in coordinates centered at the shared value, each optionally
   carrying the tangent image P_l of its stratum. Source dimensions may
   differ between germs. */
struct MultigermConfig {
    int target_dim = 0;
    std::vector<MapGermJet> germs;
    std::vector<std::optional<Subspace>> strata;
    std::vector<std::string> labels;

    MultigermConfig() = default;
    MultigermConfig(int target_dim_, std::vector<MapGermJet> germs_,
                    std::vector<std::optional<Subspace>> strata_ = {},
                    std::vector<std::string> labels_ = {});

    int size() const { return static_cast<int>(germs.size()); }
    int order() const { return germs.at(0).order(); }

    /* germs re-declared at the given order (raising is exact for
       polynomial data; lowering truncates) */
    MultigermConfig at_order(int new_order) const;

    /* single-germ sub-configuration */
    MultigermConfig germ_config(int l) const;

    /* default jet order for stability checks */
    int default_order() const { return target_dim + 1; }
};

/* k <= 0 selects the default order n+1. */
int effective_order(const MultigermConfig& config, int k);

/* Post-composition with an invertible target change and per-germ
   pre-composition with invertible source changes; strata transform along. */
MultigermConfig transform_config(const MultigermConfig& config, const Mat& target_change,
                                 const std::vector<Mat>& source_changes);

/* f components of the linear map given by the matrix */
MapGermJet linear_germ(const Mat& a, int order);

/* One column of the stability operator, in coefficient coordinates of
   C/m^{k+1}C. Kinds:
     source - tf image of (monomial)*d/dx_direction at one germ
     target - wf image of (monomial)*d/dy_direction, stacked over all
              germs (the same v feeds every germ)
     ideal  - (monomial * f_component) d/dy_direction at one germ,
              a generator of f*(m_q)C */
struct OperatorColumn {
    enum class Kind { source, target, ideal };
    Kind kind;
    int germ;       // -1 for target columns
    int direction;  // 0-based
    MultiIndex monomial;
    int component;  // ideal columns only, else -1
};

struct OperatorMatrix {
    Mat m;
    std::vector<OperatorColumn> columns;
    std::vector<int> row_offset;                    // per germ
    std::vector<std::vector<MultiIndex>> row_basis; // per germ, grlex order
    int order = 0;

    int rows_of_germ(int l) const;
};

/* The full tf + wf + f*(m_q) operator at the given order. Columns appear
   in the documented deterministic order: per-germ source generators, then
   shared target generators, then per-germ ideal generators. */
OperatorMatrix assemble_operator(const MultigermConfig& config, int order);

/* Coefficient vector of a field in the stacked (component, monomial)
   coordinates used by the operator rows. */
Vec field_to_vec(const VectorFieldAlongGerm& w, const std::vector<MultiIndex>& basis);
VectorFieldAlongGerm vec_to_field(const Vec& coeffs, int source_dim, int target_dim, int order,
                                  const std::vector<MultiIndex>& basis);

/* Certificate of non-surjectivity: a functional on C/m^{k+1}C that
   annihilates every operator column, together with a field it pairs
   nonzero with. */
struct StabilityWitness {
    Vec functional;                              // stacked over all germ rows
    std::vector<VectorFieldAlongGerm> field;     // per germ
    std::string description;
};

struct StabilitySolution {
    std::vector<SourceVectorField> u;            // per germ
    TargetVectorField v;
    /* w - tf(u) - wf(v), by construction inside the f*(m_q) column span */
    std::vector<VectorFieldAlongGerm> residual;
};

/* Solver certificate: enough exact data to solve the stability equation
   for any right-hand side of degree <= order. */
class StabilitySolver {
public:
    StabilitySolver(MultigermConfig config, int order);

    /* tf(u) + wf(v) + residual = w, exact at the solver's order; throws
       precondition_error when w is outside the reachable span (never for
       a configuration reported stable). */
    StabilitySolution solve(const std::vector<VectorFieldAlongGerm>& w) const;

    int order() const { return order_; }
    const MultigermConfig& config() const { return config_; }

    /* total cokernel dimension of the per-germ blocks, the coupled
       surjectivity question left for the shared target fields */
    int coupled_rows() const;
    /* the coupling matrix is surjective iff the configuration is stable */
    bool surjective() const;
    std::vector<Vec> coupled_cokernel() const;

    /* lift a functional on the coupled quotient to row coordinates */
    Vec lift_functional(const Vec& phi) const;

private:
    MultigermConfig config_;
    int order_;
    std::vector<std::vector<MultiIndex>> row_basis_;
    std::vector<int> row_offset_;
    int total_rows_ = 0;

    // Per-germ block: columns that act on one germ only (tf and ideal).
    struct GermBlock {
        Mat d;
        std::vector<OperatorColumn> columns;
        std::vector<Vec> coker;
    };
    std::vector<GermBlock> blocks_;

    Mat target_cols_;                       // wf columns, stacked over germs
    std::vector<OperatorColumn> target_info_;
    Mat coupled_;                           // per-germ cokernels applied to wf columns
};

struct StabilityVerdict {
    bool stable = false;
    int jet_order = 0;
    std::optional<StabilityWitness> witness;          // set when unstable
    std::shared_ptr<const StabilitySolver> solver;    // set when stable
};

/* Decides surjectivity of the order-k stability operator; k <= 0 means the
   default order target_dim + 1. */
StabilityVerdict check_infinitesimal_stability(const MultigermConfig& config, int k = 0);

/* Exact re-check of a witness against the fully assembled operator. */
bool verify_witness(const MultigermConfig& config, int k, const StabilityWitness& witness);

struct NormalCrossingReport {
    bool value = false;
    std::vector<StabilityVerdict> per_germ;
    std::optional<bool> strata_in_general_position;  // absent when s < 2
};

/* Mather normal crossing at this fiber: every germ is infinitesimally
   stable on its own and the stratum tangents are in general position.
   Strata are required on every germ once s >= 2. */
NormalCrossingReport check_normal_crossing_report(const MultigermConfig& config, int k = 0);
bool check_normal_crossing(const MultigermConfig& config, int k = 0);

struct Theorem1Report {
    StabilityVerdict infinitesimal;
    NormalCrossingReport normal_crossing;
    bool agree = false;
};

/* Cross-check of the two computable legs of the stability theorem at a
   finite fiber. */
Theorem1Report theorem1_local_equivalence(const MultigermConfig& config, int k = 0);

}  // namespace germstab
