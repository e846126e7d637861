#include "realopt/reference_oracle.hpp"

#include <cmath>
#include <vector>

namespace realopt {

namespace {

double fixed(const CashFlowDist& dist) {
    if (dist.variance() != 0.0) throw_usage("reference enumeration handles deterministic trees only");
    return dist.mean();
}

}  // namespace

double enumerate_value(const OptionTree& tree) {
    require_valid(validate_tree(tree));
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int l = 0; l < 2; ++l) {
                const auto& s1 = tree.stage1[i];
                const auto& s2 = s1.outcomes[j];
                const auto& s3 = s2.outcomes[l];
                const double prob = s1.control.p * s2.control.p * s3.p;

                std::vector<double> path;
                path.push_back(fixed(s1.flow) + fixed(s1.control.delta));
                path.push_back(fixed(s2.flow) + fixed(s2.control.delta));
                for (const auto& cf : s3.flows) path.push_back(fixed(cf));

                double pv = 0.0;
                for (std::size_t k = 1; k <= path.size(); ++k)
                    pv += path[k - 1] / std::pow(1.0 + tree.rate, static_cast<double>(k));
                total += prob * pv;
            }
        }
    }
    return total;
}

}  // namespace realopt
