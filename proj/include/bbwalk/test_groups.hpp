#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bbwalk/group.hpp"

namespace bbwalk {

// A named desk-scale group together with its canonical identity-prefixed
// generator list.
struct TestGroupInstance {
    std::string name;
    std::shared_ptr<TableGroup> group;
    GeneratorList generators;
    bool abelian = false;
};

// Z4, Z2^3, S3, D4, Q8, Z2xZ2, plus *-k4 variants whose generator lists are
// padded to k = 4 for fixed-size walk experiments.
TestGroupInstance named_test_group(const std::string& name);

std::vector<std::string> test_group_names();

}  // namespace bbwalk
