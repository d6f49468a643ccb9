#pragma once

#include <string>
#include <vector>

#include "intprior/design.hpp"

namespace intprior {

// Packaged datasets. breast_cancer: receptor level and stage vs 5-year breast
// cancer mortality (Greenland 2004), 192 Bernoulli rows after expansion.
// birthwt: the 189-row low-birth-weight cohort (Hosmer & Lemeshow 1989, as
// distributed with R's MASS package).
//
// `tested` names the variables pinned to zero under the null; empty selects
// the default contrast (receptor for breast_cancer, smoke for birthwt).
DesignResult preset_dataset(const std::string& name, std::vector<std::string> tested = {});

std::vector<std::string> preset_names();

}  // namespace intprior
