from setuptools import setup, find_packages

setup(
    name="branescope",
    version="0.1.0",
    packages=find_packages(),
    zip_safe=False,
    include_package_data=True,
    package_data={"branescope": ["data/*.json"]},
    entry_points={"console_scripts": ["branescope=branescope.cli:main"]},
)
