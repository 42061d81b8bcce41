import os

from dotenv import load_dotenv

load_dotenv()


class BaseConfig:
    LOG_LEVEL = os.environ.get("WTRANSFORM_LOG_LEVEL", "WARNING")

    # expression algebra
    MAX_POWER = int(os.environ.get("WTRANSFORM_MAX_POWER", 8))
    MERGE_TOLERANCE = float(os.environ.get("WTRANSFORM_MERGE_TOLERANCE", 1e-15))
    TABLE_MAX_DEGREE = 64
    MAX_DIMENSION = int(os.environ.get("WTRANSFORM_MAX_DIMENSION", 64))
    MAX_TERMS = int(os.environ.get("WTRANSFORM_MAX_TERMS", 10_000))

    # oracle
    QUADRATURE_NODES = int(os.environ.get("WTRANSFORM_QUADRATURE_NODES", 64))
    NONSMOOTH_NODES = int(os.environ.get("WTRANSFORM_NONSMOOTH_NODES", 200))
    MC_SAMPLES = int(os.environ.get("WTRANSFORM_MC_SAMPLES", 1_000_000))
    MC_SEED = int(os.environ.get("WTRANSFORM_MC_SEED", 42))
    MAX_QUADRATURE_DIM = int(os.environ.get("WTRANSFORM_MAX_QUADRATURE_DIM", 3))

    # homotopy
    SIGMA_MAX = float(os.environ.get("WTRANSFORM_SIGMA_MAX", 2.0))
    SIGMA_MIN = float(os.environ.get("WTRANSFORM_SIGMA_MIN", 0.01))
    SCHEDULE_STEPS = int(os.environ.get("WTRANSFORM_SCHEDULE_STEPS", 8))
    TOL = float(os.environ.get("WTRANSFORM_TOL", 1e-6))
    MAX_ITER = int(os.environ.get("WTRANSFORM_MAX_ITER", 10_000))
    ARMIJO_C = 1e-4
    ARMIJO_SHRINK = 0.5
    INITIAL_STEP = 1.0
    DIVERGENCE_RADIUS = 1e6

    # cli
    VERIFY_POINTS = 20
    VERIFY_SEED = 0
    VERIFY_RANGE = 2.0
    VERIFY_TOL = 1e-8
    VERIFY_TOL_NONSMOOTH = 1e-6
    SIGNIFICANT_DIGITS = 12


class DevelopmentConfig(BaseConfig):
    LOG_LEVEL = os.environ.get("WTRANSFORM_LOG_LEVEL", "DEBUG")


class ProductionConfig(BaseConfig):
    pass


class TestingConfig(BaseConfig):
    MC_SAMPLES = 200_000  # keeps the n > 3 oracle tests fast


def get_config(name=None):
    if name is None:
        name = os.environ.get("WTRANSFORM_ENV", "production").lower()
    if name.startswith("dev"):
        return DevelopmentConfig
    if name.startswith("test"):
        return TestingConfig
    return ProductionConfig
