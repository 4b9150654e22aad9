#include "dbsearch/propagators.hpp"

namespace dbsearch {

PropResult ObjectiveBound::propagate(Problem& p) {
    if (!incumbent_ || !incumbent_->best) return PropResult::Consistent;
    std::optional<long long> lb = bound_(p);
    if (!lb) return PropResult::Failed;
    return *lb >= *incumbent_->best ? PropResult::Failed : PropResult::Consistent;
}

} // namespace dbsearch
