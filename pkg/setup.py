# Always prefer setuptools over distutils
from setuptools import find_packages, setup

# Get the long description from the README file
with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="pyarabcorpus",
    # Keep in step with pyarabcorpus.__version__.
    version="0.3.0",
    description="Normalization, filtering, segmentation, overlap removal and scoring for Arabic speech corpora.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: Arabic",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Multimedia :: Sound/Audio :: Speech",
        "Topic :: Text Processing :: Linguistic",
    ],
    keywords="arabic speech asr corpus manifest diacritics wer",
    packages=find_packages(exclude=["contrib", "docs"]),
    python_requires=">=3.7",
    # List run-time dependencies here.  These will be installed by pip when
    # your project is installed.
    install_requires=["six", "titlecase", "regex", "PyYAML>=5.1", "webvtt-py>=0.4.6"],
    # $ pip install -e .[dev,test]
    extras_require={"dev": ["check-manifest", "black", "isort"], "test": ["coverage"]},
    # The default pipeline config ships inside the package.
    package_data={"pyarabcorpus": ["configs/*.yaml", "tests/data/*.txt"]},
    test_suite="pyarabcorpus.tests",
    entry_points={
        "console_scripts": [
            "pyarabcorpus=pyarabcorpus.cli:main",
        ],
    },
)
