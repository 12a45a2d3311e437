#pragma once

#include "operad/builtins.hpp"
#include "operad/compat.hpp"
#include "operad/koszul.hpp"
#include "operad/linalg.hpp"
#include "operad/manin.hpp"
#include "operad/polarization.hpp"
#include "operad/presentations.hpp"
#include "operad/rewrite.hpp"
#include "operad/trees.hpp"
#include "operad/verify.hpp"
