#pragma once
#include "bvq/random.hpp"

namespace testgen = bvq::gen;
