from os import path

# worked example of the practical parse at D = 1/2
EXAMPLE_SOURCE = "0110101101000"
EXAMPLE_DISTORTION = "1/2"
EXAMPLE_FIRST_CODEBOOK = {"00", "01", "1"}
EXAMPLE_SECOND_CODEBOOK = {"00", "010", "011", "1"}
EXAMPLE_SECOND_UNPARSED = "110101101000"
EXAMPLE_SECOND_MATCHES = {"01", "1"}
EXAMPLE_PARSED_AFTER_TWO_STEPS = "011"
EXAMPLE_RECONSTRUCTED_AFTER_TWO_STEPS = "001"
EXAMPLE_THIRD_UNPARSED = "0101101000"

# phrases (0)(1)(01): [partial=0][new=0][idx=0,new=1][idx=01,new=1]
LZ78_EXAMPLE_INPUT = "0101"
LZ78_EXAMPLE_PAYLOAD = "0001011"
# phrases (0)(1)(0 partial): [partial=1][new=0][idx=0,new=1][idx=01]
LZ78_PARTIAL_INPUT = "010"
LZ78_PARTIAL_PAYLOAD = "100101"

HEADER_BYTE_SIZE = 33

TEST_DATA_PATH = path.join(path.curdir, "tests", "test_data")
EXAMPLE_EXPERIMENT_CONFIG_PATH = path.join(TEST_DATA_PATH, "small_experiment.conf")
