#pragma once

#include "germstab/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace germstab {

/* One classical normal form with its stratum tangent data and the known
   single-germ verdict. Unstable entries carry no stratum. */
struct CatalogEntry {
    std::string name;
    int source_dim = 0;
    int target_dim = 0;
    MapGermJet germ;
    std::optional<Subspace> stratum_tangent;
    bool expected_stable = false;
    std::string notes;

    CatalogEntry() : germ(1, 1, 1) {}
};

/* order <= 0 selects max(target_dim + 1, germ degree); anything below the
   germ degree is an argument_error. */
CatalogEntry catalog_get(const std::string& name, int order = 0);
std::vector<std::string> catalog_list();

/* Multigerm configurations with known verdicts: every single entry as an
   s = 1 configuration plus the composite fibers used by the cross-checks. */
struct CatalogConfig {
    std::string name;
    MultigermConfig config;
    bool expected_stable = false;
    std::string notes;
};

CatalogConfig catalog_config_get(const std::string& name, int order = 0);
std::vector<std::string> catalog_config_list();

}  // namespace germstab
