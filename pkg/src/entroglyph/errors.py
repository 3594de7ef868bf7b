"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` used by the CLI: 1 for validation
problems, 2 for numerical failures.
"""


class EntroglyphError(Exception):
    """Base class for all package errors."""

    exit_code = 1


# --- distributions and signals -------------------------------------------

class InvalidDistribution(EntroglyphError):
    """Probability weights are negative or do not sum to one."""


class FrequencyAboveNyquist(EntroglyphError):
    """Requested cycle count exceeds half the sample count."""


class SeriesTooShort(EntroglyphError):
    """The series has too few samples for the requested operation."""


class NoTemplateMatches(EntroglyphError):
    """Sample entropy is undefined: no template pairs matched."""

    exit_code = 2


# --- geometry -------------------------------------------------------------

class RadiusUnderflow(EntroglyphError):
    """Signal amplitude drives the polar radius to zero or below."""


class InvalidProportions(EntroglyphError):
    """Glyph proportion fractions are out of range."""


# --- scale ----------------------------------------------------------------

class NonMonotoneEntropy(EntroglyphError):
    """Scale levels whose entropy scores do not strictly increase."""

    exit_code = 2


class BoundsUnset(EntroglyphError):
    """Variance mapping requested on a scale without bounds."""


class OutOfRange(EntroglyphError):
    """Input value outside its documented domain."""


# --- ingest ---------------------------------------------------------------

class MalformedRow(EntroglyphError):
    """A reading row that could not be parsed.

    Attributes
    ----------
    row : int
        1-based row (or element) index in the source.
    reason : str
        Human-readable cause.
    """

    def __init__(self, row, reason):
        super().__init__(f"row {row}: {reason}")
        self.row = row
        self.reason = reason


class UnknownFormat(EntroglyphError):
    """Reading format other than csv or json."""


# --- render ---------------------------------------------------------------

class PlacementOutOfCanvas(EntroglyphError):
    """A glyph placement does not fit inside the scene canvas."""


# --- analysis -------------------------------------------------------------

class DisconnectedGraph(EntroglyphError):
    """Comparison graph is not connected, abilities are not identifiable."""


class NonConvergence(EntroglyphError):
    """Iterative fit did not converge.

    Attributes
    ----------
    iterations : int
    gradient_norm : float
    """

    exit_code = 2

    def __init__(self, iterations, gradient_norm):
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(gradient norm {gradient_norm:.3e})")
        self.iterations = iterations
        self.gradient_norm = gradient_norm


class SelfPair(EntroglyphError):
    """A comparison record pairs an item with itself."""


class SingularDesign(EntroglyphError):
    """Regression design matrix is rank deficient."""

    exit_code = 2


class EmptyCondition(EntroglyphError):
    """A detection-count condition has no trials."""


class LengthMismatch(EntroglyphError):
    """Paired samples of unequal length."""


class TooFewSamples(EntroglyphError):
    """Not enough observations for the statistic."""


class InfiniteT(EntroglyphError):
    """Paired differences have zero variance but a nonzero mean."""

    exit_code = 2


# --- trials ---------------------------------------------------------------

class TooFewGlyphs(EntroglyphError):
    """A ranking manifest needs at least two glyphs."""


class WrongBucketSize(EntroglyphError):
    """A search-manifest bucket does not hold exactly ten assets."""


class MixedModes(EntroglyphError):
    """Result files disagree on mode or stimulus set."""


class MissingRecords(EntroglyphError):
    """A result file does not cover every manifest trial.

    Attributes
    ----------
    trial_indices : tuple[int, ...]
        Manifest trial indices without exactly one record.
    """

    def __init__(self, trial_indices):
        idx = tuple(sorted(trial_indices))
        super().__init__(f"trials without exactly one record: {idx}")
        self.trial_indices = idx
