#pragma once

#include <optional>
#include <string>
#include <vector>

#include "volterra/core.hpp"

namespace volterra::cli {

/// A named built-in kernel with its default interval and Lipschitz constant.
struct RegistryEntry {
    std::string name;
    KernelForm kernel;
    double t0;
    double r;
    double lipschitz;
    std::string description;
};

/// Built-in problems runnable without an expression:
///   jung-example  f(s,y) = s*y   on [0,2], L = 2
///   exp-growth    f(s,y) = y+1   on [0,1], L = 1
///   bilinear      f(t,s,y)=t*s*y on [0,1], L = 1
const std::vector<RegistryEntry>& kernel_registry();

std::optional<RegistryEntry> find_kernel(const std::string& name);

}  // namespace volterra::cli
