#include "volterra/cli/registry.hpp"

namespace volterra::cli {

const std::vector<RegistryEntry>& kernel_registry() {
    static const std::vector<RegistryEntry> entries = {
        {"jung-example",
         KernelForm::state_only([](double s, double y) { return s * y; }), 0.0, 2.0, 2.0,
         "homogeneous kernel f(s,y) = s*y on [0,2]; only solution is y = 0"},
        {"exp-growth",
         KernelForm::state_only([](double, double y) { return y + 1.0; }), 0.0, 1.0, 1.0,
         "kernel f(s,y) = y+1 on [0,1]; solution e^t - 1"},
        {"bilinear",
         KernelForm::bivariate([](double t, double s, double y) { return t * s * y; }), 0.0,
         1.0, 1.0, "bivariate kernel f(t,s,y) = t*s*y on [0,1]; only solution is y = 0"},
    };
    return entries;
}

std::optional<RegistryEntry> find_kernel(const std::string& name) {
    for (const auto& entry : kernel_registry()) {
        if (entry.name == name) return entry;
    }
    return std::nullopt;
}

}  // namespace volterra::cli
