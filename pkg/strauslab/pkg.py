"""Wrapper around setuptools pkg_resources for the data shipped with the
package: commands.json, summary templates, fixtures and example systems.
"""
import pkg_resources


def exists(resource_name):
    """Check if a resource exists

    Params:
        resource_name: Relative path to the resource from the package root
    Returns: boolean specifying existence
    """
    return pkg_resources.resource_exists(__package__, resource_name)


def isdir(resource_name):
    """Check if a resource is a directory

    Params:
        resource_name: Relative path to the resource from the package root
    Returns: boolean, False for files and missing resources
    """
    return pkg_resources.resource_isdir(__package__, resource_name)


def listdir(resource_name):
    """Sorted names of the entries of a resource directory"""
    return sorted(pkg_resources.resource_listdir(__package__, resource_name))


def string(resource_name, encoding='utf-8'):
    """Resource contents decoded as text

    Params:
        resource_name: Relative path to the resource from the package root
        encoding: encoding of the resource bytes
    Returns: contents as str
    Raises:
        FileNotFoundError: if the resource does not exist
    """
    if not exists(resource_name):
        raise FileNotFoundError(f'resource {resource_name} not available in '
                                'distribution package')
    data = pkg_resources.resource_string(__package__, resource_name)
    return data.decode(encoding)


def string_list(resource_name, encoding='utf-8'):
    """Resource contents split into lines"""
    return string(resource_name, encoding).splitlines()
