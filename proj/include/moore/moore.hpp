#pragma once

#include "moore/compose.hpp"
#include "moore/cube.hpp"
#include "moore/cube_file.hpp"
#include "moore/error.hpp"
#include "moore/expr.hpp"
#include "moore/law_lab.hpp"
#include "moore/ops.hpp"
#include "moore/oracle.hpp"
#include "moore/space.hpp"
#include "moore/svg.hpp"
#include "moore/tensor.hpp"
