import os

REPO_PATH = os.path.abspath(
    os.path.join(
        os.path.abspath(__file__),
        "..","..","..",
    )
)

DATA_PATH = os.path.join(REPO_PATH, 'data')

# seeded exact sampling
DEFAULT_SEED = 0
NUMERATOR_BOUND = 1000
DENOMINATORS = tuple(range(1, 17))

# codimension classifier
CLASSIFIER_TRIALS = 20

# floating cortex approximation (max-coordinate norm)
SCALES = (1e-1, 1e-2, 1e-3)
WINDOW = (0.5, 2.0)
X_RADIUS = 2.0
CSV_FLOAT_FORMAT = '%.17g'
