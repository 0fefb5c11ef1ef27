"""GreyShot: a zero-shot recommender built on GM(1,1) grey-system modelling."""

from .baselines import MFConfig, random_scorer, train_mf
from .data import (
    DatasetFormatError,
    RatingsDataset,
    SplitSpec,
    load_delimited,
    load_movielens,
    split,
    write_delimited,
)
from .experiment import (
    ConfigError,
    ExperimentConfig,
    TrialReport,
    run_experiment,
    run_trial,
)
from .grey import (
    GM11Model,
    GreyModelError,
    ago,
    fit_gm11,
    forecast_cumulative,
    forecast_restored,
    inverse_ago,
)
from .gradcheck import run_gradient_check
from .metrics import (
    DegenerateProfileError,
    PopularityProfile,
    RescalePolicy,
    dme,
    mae,
    popularity_profile,
    rescale,
)
from .model import (
    DegenerateTransform,
    GreyShotParams,
    TrainConfig,
    grad_a,
    grad_b,
    grad_u,
    grad_v,
    grey_transform,
    likelihood_term,
    load_params,
    log_likelihood,
    predict,
    save_params,
    train,
)
from .scorers import DotProductScorer, HashedUniformScorer, Scorer

__version__ = "0.1.0"
