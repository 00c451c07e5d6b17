#pragma once

#include <memory>
#include <string>

#include "twistkl/app/pipeline.hpp"

namespace testing_support {

/// A cache-free pipeline for (group, sigma, delta).
inline std::unique_ptr<twistkl::Pipeline> make_pipeline(const std::string& group, const std::string& sigma = "id",
                                                         const std::string& delta = "id", unsigned jobs = 1) {
  twistkl::RunConfig c;
  c.group = group;
  c.sigma = sigma;
  c.delta = delta;
  c.use_cache = false;
  c.jobs = jobs;
  return std::make_unique<twistkl::Pipeline>(twistkl::validate(c));
}

inline std::shared_ptr<const twistkl::WeightedSystem> weyl(const std::string& group) {
  return twistkl::WeightedSystem::build_weyl(twistkl::CoxeterDescriptor::parse(group));
}

}  // namespace testing_support
