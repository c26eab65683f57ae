from setuptools import setup, find_packages

setup(
    name="bianchi-padic",
    packages=find_packages(include=["bianchi_padic", "bianchi_padic.*"]),
)
