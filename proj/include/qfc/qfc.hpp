#pragma once

#include "qfc/constants.hpp"
#include "qfc/errors.hpp"
#include "qfc/core_model.hpp"
#include "qfc/classical.hpp"
#include "qfc/moments.hpp"
#include "qfc/quantum_matrix.hpp"
#include "qfc/closed_forms.hpp"
#include "qfc/units.hpp"
#include "qfc/spectra.hpp"
#include "qfc/config.hpp"
#include "qfc/dataset_io.hpp"
